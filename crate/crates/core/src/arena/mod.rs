//! The synthesis game between a System strategy and Environment policies,
//! under a bounded-delay scheduler.

mod policies;
mod simulate;
mod strategy;

pub use policies::{compliant_env_policy, standard_suite, Blocker, Compliant, PrematureOke, RandomEnv, Scripted};
pub use simulate::{simulate, verify_play, PolicyRecord, ScheduleConfig, StopReason, Trace, VerifyReport, Violation};
pub use strategy::{EnvironmentPolicy, SystemStrategy};
