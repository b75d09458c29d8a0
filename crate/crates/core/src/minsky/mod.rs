//! Two-counter machines and their reduction to two-variable formulas.

mod compile;
mod machine;
mod run;
mod strategy;

pub use compile::{
    compile_to_fo2_ord, compile_with, reduction_signature, system_letters, CompileOptions, Detector,
    ReductionFormulas, ENV_LETTERS, SYS_FIXED,
};
pub use machine::{MachineError, MinskyMachine, Transition, TransitionKind, REDUCTION_LETTERS};
pub use run::{bounded_halting_search, run, step, MachineConfig, Run, RunError, StepError};
pub use strategy::{
    cheat_strategy, required_processes, strategy_from_run, Chunk, ScriptedSystem, StrategyError, SystemCheat,
    ENV_PROCESS, MAIN_PROCESS,
};
