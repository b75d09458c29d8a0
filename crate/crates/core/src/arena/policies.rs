use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHasher;

use crate::dataword::{evaluate_closed, DataWord, Position, ProcessPools, WordStructure};
use crate::logic::{Formula, Signature};
use crate::minsky::{compile_with, CompileOptions, MinskyMachine, ENV_PROCESS};

use super::strategy::EnvironmentPolicy;

fn oke() -> Position {
    Position::new("oke", ENV_PROCESS)
}

fn is_ko(p: &Position) -> bool {
    p.action == "koe" || p.action == "kos"
}

fn ends_in_oks(h: &[Position]) -> bool {
    h.last().is_some_and(|p| p.action == "oks")
}

/// Never moves.
#[derive(Debug, Clone, Copy, Default)]
pub struct Blocker;

impl EnvironmentPolicy for Blocker {
    fn name(&self) -> String {
        "blocker".into()
    }

    fn next_move(&self, _history: &[Position]) -> Option<Position> {
        None
    }
}

/// Plays `script[history.len()]` on its process, `None` entries being passes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scripted {
    process: String,
    script: Vec<Option<String>>,
}

impl Scripted {
    pub fn new(process: &str, script: Vec<Option<String>>) -> Self {
        Scripted { process: process.into(), script }
    }

    /// Comma-separated actions with `-` for a pass, e.g. `-,oke,oke`.
    pub fn parse(process: &str, text: &str) -> Self {
        let script = text
            .split(',')
            .map(str::trim)
            .map(|a| (a != "-" && !a.is_empty()).then(|| a.to_string()))
            .collect();
        Scripted::new(process, script)
    }
}

impl EnvironmentPolicy for Scripted {
    fn name(&self) -> String {
        let parts: Vec<&str> = self.script.iter().map(|a| a.as_deref().unwrap_or("-")).collect();
        format!("script:{}", parts.join(","))
    }

    fn next_move(&self, history: &[Position]) -> Option<Position> {
        self.script
            .get(history.len())
            .cloned()
            .flatten()
            .map(|a| Position::new(a, &self.process))
    }
}

/// Pools just large enough for `history`, so a prefix can be model-checked
/// without knowing the game's pools.
fn pools_of(history: &[Position], sig: &Signature) -> ProcessPools {
    let mut sys = BTreeSet::new();
    let mut env = BTreeSet::new();
    for p in history {
        if sig.sys_actions().contains(&p.action) {
            sys.insert(p.process.clone());
        } else {
            env.insert(p.process.clone());
        }
    }
    let mixed: BTreeSet<String> = sys.intersection(&env).cloned().collect();
    let only = |side: &BTreeSet<String>| side.difference(&mixed).cloned().collect::<Vec<_>>();
    ProcessPools::new(only(&sys), only(&env), mixed).unwrap_or_default()
}

/// Acknowledges every `oks`, and plays `koe` once as soon as System has
/// cheated. Never plays after a `ko`.
#[derive(Debug, Clone)]
pub struct Compliant {
    koe: Formula,
    sig: Signature,
}

pub fn compliant_env_policy(m: &MinskyMachine) -> Compliant {
    let r = compile_with(m, CompileOptions::default());
    Compliant { koe: r.koe, sig: r.signature }
}

impl Compliant {
    /// Whether System has cheated since the last `oke` in `history`.
    pub fn cheat_detected(&self, history: &[Position]) -> bool {
        let word = DataWord::new(history.to_vec());
        WordStructure::new(&word, &pools_of(history, &self.sig), &self.sig)
            .ok()
            .and_then(|s| evaluate_closed(&self.koe, &s).ok())
            .unwrap_or(false)
    }
}

impl EnvironmentPolicy for Compliant {
    fn name(&self) -> String {
        "compliant".into()
    }

    fn next_move(&self, history: &[Position]) -> Option<Position> {
        if history.iter().any(is_ko) {
            return None;
        }
        if self.cheat_detected(history) {
            return Some(Position::new("koe", ENV_PROCESS));
        }
        ends_in_oks(history).then(oke)
    }
}

/// Acknowledges like a compliant player, but also answers System's first
/// state letter of a pattern with an `oke` before it is due.
#[derive(Debug, Clone)]
pub struct PrematureOke {
    states: BTreeSet<String>,
    after_ko: bool,
}

impl PrematureOke {
    pub fn new(m: &MinskyMachine) -> Self {
        PrematureOke { states: m.states().iter().cloned().collect(), after_ko: false }
    }

    /// Additionally plays one `oke` after System's `kos`.
    pub fn oke_after_ko(m: &MinskyMachine) -> Self {
        PrematureOke { after_ko: true, ..PrematureOke::new(m) }
    }
}

impl EnvironmentPolicy for PrematureOke {
    fn name(&self) -> String {
        if self.after_ko { "oke-after-ko" } else { "premature-oke" }.into()
    }

    fn next_move(&self, history: &[Position]) -> Option<Position> {
        let count = |a: &str| history.iter().filter(|p| p.action == a).count();
        let last = history.last()?;
        if let Some(k) = history.iter().rposition(|p| p.action == "kos") {
            let answered = history[k + 1..].iter().any(|p| p.action == "oke");
            return (self.after_ko && !answered && k + 1 == history.len()).then(oke);
        }
        if history.iter().any(is_ko) {
            return None;
        }
        if last.action == "oks" || (self.states.contains(&last.action) && count("oke") == count("oks")) {
            return Some(oke());
        }
        None
    }
}

/// Plays `oke` at random: likely right after an `oks`, occasionally elsewhere.
/// The choice depends only on the seed and the history length.
#[derive(Debug, Clone, Copy)]
pub struct RandomEnv {
    seed: u64,
    p_after_oks: f64,
    p_elsewhere: f64,
}

impl RandomEnv {
    pub fn new(seed: u64) -> Self {
        RandomEnv { seed, p_after_oks: 0.7, p_elsewhere: 0.2 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl EnvironmentPolicy for RandomEnv {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn next_move(&self, history: &[Position]) -> Option<Position> {
        let mut h = FxHasher::default();
        (self.seed, history.len()).hash(&mut h);
        let mut rng = ChaCha8Rng::seed_from_u64(h.finish());
        let p = if ends_in_oks(history) { self.p_after_oks } else { self.p_elsewhere };
        rng.gen_bool(p).then(oke)
    }
}

/// compliant, blocker, premature-oke, oke-after-ko, then `randoms` seeded
/// random players starting at `seed`.
pub fn standard_suite(m: &MinskyMachine, randoms: u64, seed: u64) -> Vec<Box<dyn EnvironmentPolicy>> {
    let mut suite: Vec<Box<dyn EnvironmentPolicy>> = vec![
        Box::new(compliant_env_policy(m)),
        Box::new(Blocker),
        Box::new(PrematureOke::new(m)),
        Box::new(PrematureOke::oke_after_ko(m)),
    ];
    suite.extend((0..randoms).map(|i| Box::new(RandomEnv::new(seed + i)) as Box<dyn EnvironmentPolicy>));
    suite
}
