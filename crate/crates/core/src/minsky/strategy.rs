//! System strategies that play a run pattern by pattern, and the cheating
//! variants used to exercise each detector.

use std::fmt;

use thiserror::Error;

use crate::arena::SystemStrategy;
use crate::dataword::Position;

use super::compile::Detector;
use super::machine::{MinskyMachine, TransitionKind};
use super::run::Run;

/// Process every non-counter letter is played on.
pub const MAIN_PROCESS: &str = "0";
pub const ENV_PROCESS: &str = "e";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("run does not end in the halting state")]
    NotHalting,
    #[error("unknown transition `{0}`")]
    UnknownTransition(String),
}

/// A block of System letters followed, unless it is the final one, by a wait
/// for Environment's `oke`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chunk {
    pub moves: Vec<Position>,
    pub expects_ack: bool,
}

/// Plays chunks in order, reacting to Environment as the honest strategy
/// does: wait for each acknowledgement, `kos` once after any unexpected `oke`,
/// and fall silent after any `ko`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptedSystem {
    chunks: Vec<Chunk>,
    processes: usize,
}

fn is_env_letter(a: &str) -> bool {
    a == "oke" || a == "koe"
}

impl ScriptedSystem {
    pub fn new(chunks: Vec<Chunk>) -> Self {
        let processes = chunks
            .iter()
            .flat_map(|c| &c.moves)
            .filter_map(|p| p.process.parse::<usize>().ok())
            .max()
            .map_or(1, |m| m + 1);
        ScriptedSystem { chunks, processes }
    }

    /// Opening `oks`, one `state, transition, upkeep, oks` pattern per name,
    /// then the final state. Names are not checked against the step relation.
    pub fn from_transitions<S: AsRef<str>>(m: &MinskyMachine, names: &[S]) -> Result<Self, StrategyError> {
        let on = |a: &str, p: &str| Position::new(a, p);
        let mut chunks = vec![Chunk { moves: vec![on("oks", MAIN_PROCESS)], expects_ack: true }];
        let mut state = m.init().to_string();
        let mut fresh = 0usize;
        // per counter: processes with an inc and no dec yet
        let mut open: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for name in names {
            let name = name.as_ref();
            let t = m.transition(name).ok_or_else(|| StrategyError::UnknownTransition(name.to_string()))?;
            let upkeep_proc = match t.kind {
                TransitionKind::Inc(i) => {
                    open[i].push(fresh);
                    fresh += 1;
                    (fresh - 1).to_string()
                }
                TransitionKind::Dec(i) => {
                    if open[i].is_empty() {
                        MAIN_PROCESS.to_string()
                    } else {
                        open[i].remove(0).to_string()
                    }
                }
                TransitionKind::Zero(_) => MAIN_PROCESS.to_string(),
            };
            chunks.push(Chunk {
                moves: vec![
                    on(&state, MAIN_PROCESS),
                    on(&t.name, MAIN_PROCESS),
                    on(t.kind.upkeep(), &upkeep_proc),
                    on("oks", MAIN_PROCESS),
                ],
                expects_ack: true,
            });
            state = t.target.clone();
        }
        chunks.push(Chunk { moves: vec![on(&state, MAIN_PROCESS)], expects_ack: false });
        Ok(ScriptedSystem::new(chunks))
    }

    pub fn chunks(&self) -> &[Chunk] {
        &self.chunks
    }

    /// System processes the script touches (`"0"` up to this count minus one).
    pub fn processes(&self) -> usize {
        self.processes
    }

    /// Every System letter in play order, ignoring Environment.
    pub fn letters(&self) -> impl Iterator<Item = &Position> {
        self.chunks.iter().flat_map(|c| &c.moves)
    }
}

impl SystemStrategy for ScriptedSystem {
    fn next_move(&self, history: &[Position]) -> Option<Position> {
        let mut chunk = 0usize;
        let mut pos = 0usize;
        let mut deviation = false;
        for p in history {
            match p.action.as_str() {
                "koe" | "kos" => return None,
                "oke" => {
                    let done = self.chunks.get(chunk).is_some_and(|c| pos == c.moves.len() && c.expects_ack);
                    if done && !deviation {
                        chunk += 1;
                        pos = 0;
                    } else {
                        deviation = true;
                    }
                }
                a if !is_env_letter(a) => {
                    // a history this strategy could not have produced
                    if deviation || self.chunks.get(chunk).and_then(|c| c.moves.get(pos)) != Some(p) {
                        return None;
                    }
                    pos += 1;
                }
                _ => {}
            }
        }
        if deviation {
            return Some(Position::new("kos", MAIN_PROCESS));
        }
        self.chunks.get(chunk).and_then(|c| c.moves.get(pos)).cloned()
    }
}

/// max(1, number of increments in the run).
pub fn required_processes(m: &MinskyMachine, run: &Run) -> usize {
    run.transitions
        .iter()
        .filter(|n| m.transition(n).is_some_and(|t| matches!(t.kind, TransitionKind::Inc(_))))
        .count()
        .max(1)
}

/// The honest strategy for a halting run.
pub fn strategy_from_run(m: &MinskyMachine, run: &Run) -> Result<ScriptedSystem, StrategyError> {
    if !run.halting {
        return Err(StrategyError::NotHalting);
    }
    ScriptedSystem::from_transitions(m, &run.transitions)
}

/// Ways System can break the encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemCheat {
    /// skips the opening `oks`
    S1,
    /// state and transition letters swapped
    S2,
    /// wrong target state
    S3,
    /// transition from the wrong source
    S4,
    /// upkeep letter not matching the transition
    S5,
    /// second `inc` on a process
    S6,
    /// second `dec` on a process
    S7,
    /// `dec` on a process without `inc`
    S8,
    /// zero test with a nonzero counter
    S9,
}

impl SystemCheat {
    pub const ALL: [SystemCheat; 9] = [
        SystemCheat::S1,
        SystemCheat::S2,
        SystemCheat::S3,
        SystemCheat::S4,
        SystemCheat::S5,
        SystemCheat::S6,
        SystemCheat::S7,
        SystemCheat::S8,
        SystemCheat::S9,
    ];

    /// Subformula expected to catch this cheat; `None` for the prefix rule.
    pub fn detector(self) -> Option<Detector> {
        match self {
            SystemCheat::S1 => None,
            SystemCheat::S2 => Some(Detector::BadSeq),
            SystemCheat::S3 => Some(Detector::BadTarget),
            SystemCheat::S4 => Some(Detector::BadSource),
            SystemCheat::S5 | SystemCheat::S6 | SystemCheat::S7 | SystemCheat::S8 => Some(Detector::BadUpkeep),
            SystemCheat::S9 => Some(Detector::BadZeroTest),
        }
    }
}

impl fmt::Display for SystemCheat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn upkeep_positions(s: &ScriptedSystem, letter: &str) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (ci, c) in s.chunks.iter().enumerate() {
        for (mi, p) in c.moves.iter().enumerate() {
            if p.action == letter {
                out.push((ci, mi));
            }
        }
    }
    out
}

fn counter_pairs(s: &ScriptedSystem, prefix: &str) -> Option<((usize, usize), (usize, usize))> {
    (0..2).find_map(|i| {
        let found = upkeep_positions(s, &format!("{prefix}{i}"));
        (found.len() >= 2).then(|| (found[0], found[1]))
    })
}

/// A strategy committing `cheat` inside an otherwise honest play of `run`,
/// or `None` when the run offers no place for it.
pub fn cheat_strategy(m: &MinskyMachine, run: &Run, cheat: SystemCheat) -> Option<ScriptedSystem> {
    let mut s = strategy_from_run(m, run).ok()?;
    if run.is_empty() && cheat != SystemCheat::S1 {
        return None;
    }
    let first = 1;
    match cheat {
        SystemCheat::S1 => {
            s.chunks.remove(0);
        }
        SystemCheat::S2 => s.chunks[first].moves.swap(0, 1),
        SystemCheat::S3 => {
            let q = m.states().iter().find(|q| *q != m.init())?;
            s.chunks[first].moves[0].action = q.clone();
        }
        SystemCheat::S4 => {
            let t = m.transitions().iter().find(|t| t.source != m.init())?;
            s.chunks[first].moves[1].action = t.name.clone();
        }
        SystemCheat::S5 => {
            let p = &mut s.chunks[first].moves[2];
            p.action = if p.action == "noop" { "inc0".into() } else { "noop".into() };
            p.process = MAIN_PROCESS.into();
        }
        SystemCheat::S6 | SystemCheat::S7 => {
            let prefix = if cheat == SystemCheat::S6 { "inc" } else { "dec" };
            let ((c1, m1), (c2, m2)) = counter_pairs(&s, prefix)?;
            let proc_ = s.chunks[c1].moves[m1].process.clone();
            s.chunks[c2].moves[m2].process = proc_;
        }
        SystemCheat::S8 => {
            let (ci, mi) = (0..2).find_map(|i| upkeep_positions(&s, &format!("dec{i}")).first().copied())?;
            s.chunks[ci].moves[mi].process = s.processes.to_string();
        }
        SystemCheat::S9 => {
            let zero_at = run.transitions.iter().position(|n| {
                m.transition(n).is_some_and(|t| matches!(t.kind, TransitionKind::Zero(_)))
            })?;
            let TransitionKind::Zero(i) = m.transition(&run.transitions[zero_at])?.kind else {
                unreachable!()
            };
            let pump = run.transitions[..zero_at].iter().position(|n| {
                m.transition(n).is_some_and(|t| t.kind == TransitionKind::Inc(i) && t.source == t.target)
            })?;
            let mut names = run.transitions.clone();
            names.insert(pump, names[pump].clone());
            s = ScriptedSystem::from_transitions(m, &names).ok()?;
        }
    }
    Some(ScriptedSystem::new(s.chunks))
}
