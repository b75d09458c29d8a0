use std::fmt;

use rayon::prelude::*;

use crate::dataword::{check_compatibility, check_fairness_window, evaluate_closed, DataWord, Position, ProcessPools, WordStructure};
use crate::logic::{Formula, Owner, Signature};

use super::strategy::{EnvironmentPolicy, SystemStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduleConfig {
    pub max_rounds: usize,
    /// Environment may delay a pending System move for at most `window - 1`
    /// consecutive turns.
    pub fairness_window: usize,
}

impl ScheduleConfig {
    pub const DEFAULT_WINDOW: usize = 8;

    pub fn new(max_rounds: usize, fairness_window: usize) -> Self {
        assert!(max_rounds >= 1 && fairness_window >= 1, "schedule bounds must be at least 1");
        ScheduleConfig { max_rounds, fairness_window }
    }

    /// Round cap `10·len + 64` for a run of `len` transitions.
    pub fn for_run_len(len: usize) -> Self {
        ScheduleConfig::new(10 * len + 64, Self::DEFAULT_WINDOW)
    }
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig::for_run_len(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    BothPassed,
    MaxRounds,
    Violation,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::BothPassed => "both-passed",
            StopReason::MaxRounds => "max-rounds",
            StopReason::Violation => "violation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub round: usize,
    pub by: Owner,
    pub position: Position,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "round {}: {} played {}", self.round, self.by, self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub word: DataWord,
    pub stop: StopReason,
    pub violations: Vec<Violation>,
    pub rounds: usize,
    pub seed: Option<u64>,
}

impl Trace {
    /// The data-word file, followed by metadata as comment lines.
    pub fn to_dump(&self, pools: &ProcessPools) -> String {
        let mut out = self.word.to_file(pools);
        out.push_str(&format!("# stop: {}\n", self.stop));
        let v: Vec<String> = self.violations.iter().map(Violation::to_string).collect();
        out.push_str(&format!("# violations: {}\n", if v.is_empty() { "none".into() } else { v.join("; ") }));
        match self.seed {
            Some(s) => out.push_str(&format!("# seed: {s}\n")),
            None => out.push_str("# seed: none\n"),
        }
        out
    }
}

fn legal(p: &Position, by: Owner, pools: &ProcessPools, sig: &Signature) -> bool {
    sig.owner(&p.action) == Some(by) && pools.playable_by(by, &p.process)
}

/// Plays `strat` against `policy`. Each round Environment is asked first; a
/// System move that has been pending through `window - 1` consecutive
/// Environment moves is played before Environment is asked again.
pub fn simulate(
    strat: &dyn SystemStrategy,
    policy: &dyn EnvironmentPolicy,
    pools: &ProcessPools,
    sig: &Signature,
    sched: ScheduleConfig,
) -> Trace {
    let mut word = DataWord::default();
    let mut violations = Vec::new();
    let mut delayed = 0usize;
    let mut stop = StopReason::MaxRounds;
    let mut rounds = 0;
    while rounds < sched.max_rounds {
        rounds += 1;
        let pending = strat.next_move(&word.positions);
        let forced = pending.is_some() && delayed + 1 >= sched.fairness_window;
        let env = if forced { None } else { policy.next_move(&word.positions) };
        let (by, p) = match (env, pending) {
            (Some(e), pending) => {
                delayed = if pending.is_some() { delayed + 1 } else { 0 };
                (Owner::Environment, e)
            }
            (None, Some(s)) => {
                delayed = 0;
                (Owner::System, s)
            }
            (None, None) => {
                stop = StopReason::BothPassed;
                break;
            }
        };
        if !legal(&p, by, pools, sig) {
            violations.push(Violation { round: rounds, by, position: p });
            stop = StopReason::Violation;
            break;
        }
        word.push(p);
    }
    Trace { word, stop, violations, rounds, seed: None }
}

#[derive(Debug, Clone)]
pub struct PolicyRecord {
    pub policy: String,
    pub trace: Trace,
    pub compatible: bool,
    pub fair: bool,
    /// Truth value of the formula, or why it could not be evaluated.
    pub satisfied: Result<bool, String>,
}

impl PolicyRecord {
    pub fn falsifies(&self) -> bool {
        self.compatible && self.fair && self.trace.violations.is_empty() && self.satisfied == Ok(false)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub records: Vec<PolicyRecord>,
}

impl VerifyReport {
    pub fn falsifying(&self) -> impl Iterator<Item = &PolicyRecord> {
        self.records.iter().filter(|r| r.falsifies())
    }

    pub fn all_satisfied(&self) -> bool {
        self.records.iter().all(|r| r.satisfied == Ok(true))
    }

    /// Summary line; a sampled check, so never a claim that the strategy wins.
    pub fn headline(&self) -> String {
        if self.records.is_empty() {
            return "warning: no policies given; vacuous pass".into();
        }
        let bad: Vec<&str> = self.falsifying().map(|r| r.policy.as_str()).collect();
        if bad.is_empty() {
            format!("no falsifying policy found among {} (sampled, not a proof of winning)", self.records.len())
        } else {
            format!("falsified by: {}", bad.join(", "))
        }
    }
}

/// Simulates against each policy and model-checks the resulting words.
pub fn verify_play(
    strat: &dyn SystemStrategy,
    formula: &Formula,
    policies: &[Box<dyn EnvironmentPolicy>],
    pools: &ProcessPools,
    sig: &Signature,
    sched: ScheduleConfig,
) -> VerifyReport {
    let records = policies
        .par_iter()
        .map(|policy| {
            let trace = simulate(strat, policy.as_ref(), pools, sig, sched);
            let compatible = check_compatibility(&trace.word, strat, sig);
            let fair = check_fairness_window(&trace.word, strat, sig, sched.fairness_window);
            let satisfied = WordStructure::new(&trace.word, pools, sig)
                .map_err(|e| e.to_string())
                .and_then(|s| evaluate_closed(formula, &s).map_err(|e| e.to_string()));
            PolicyRecord { policy: policy.name(), trace, compatible, fair, satisfied }
        })
        .collect();
    VerifyReport { records }
}
