use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use super::machine::{MinskyMachine, Transition, TransitionKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineConfig {
    pub state: String,
    pub counters: [u64; 2],
}

impl MachineConfig {
    pub fn initial(m: &MinskyMachine) -> Self {
        MachineConfig { state: m.init().to_string(), counters: [0, 0] }
    }
}

impl fmt::Display for MachineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.state, self.counters[0], self.counters[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("transition {transition} starts in {expected}, machine is in {actual}")]
    WrongSource { transition: String, expected: String, actual: String },
    #[error("transition {transition} decrements c{counter}, which is 0")]
    DecAtZero { transition: String, counter: usize },
    #[error("transition {transition} tests c{counter} for zero, but it is {value}")]
    ZeroTestFailed { transition: String, counter: usize, value: u64 },
}

pub fn step(cfg: &MachineConfig, t: &Transition) -> Result<MachineConfig, StepError> {
    if cfg.state != t.source {
        return Err(StepError::WrongSource {
            transition: t.name.clone(),
            expected: t.source.clone(),
            actual: cfg.state.clone(),
        });
    }
    let mut counters = cfg.counters;
    match t.kind {
        TransitionKind::Inc(i) => counters[i] += 1,
        TransitionKind::Dec(i) => {
            counters[i] = counters[i]
                .checked_sub(1)
                .ok_or_else(|| StepError::DecAtZero { transition: t.name.clone(), counter: i })?;
        }
        TransitionKind::Zero(i) if counters[i] != 0 => {
            return Err(StepError::ZeroTestFailed { transition: t.name.clone(), counter: i, value: counters[i] });
        }
        TransitionKind::Zero(_) => {}
    }
    Ok(MachineConfig { state: t.target.clone(), counters })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub transitions: Vec<String>,
    /// Starts with the initial configuration; one more entry than `transitions`.
    pub configs: Vec<MachineConfig>,
    pub halting: bool,
}

impl Run {
    pub fn last(&self) -> &MachineConfig {
        self.configs.last().expect("a run has an initial configuration")
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("step {index}: unknown transition `{name}`")]
    UnknownTransition { index: usize, name: String },
    #[error("step {index}: {error}")]
    Step { index: usize, error: StepError },
}

impl RunError {
    pub fn index(&self) -> usize {
        match self {
            RunError::UnknownTransition { index, .. } | RunError::Step { index, .. } => *index,
        }
    }
}

pub fn run<S: AsRef<str>>(m: &MinskyMachine, names: &[S]) -> Result<Run, RunError> {
    let mut configs = vec![MachineConfig::initial(m)];
    for (index, name) in names.iter().enumerate() {
        let name = name.as_ref();
        let t = m
            .transition(name)
            .ok_or_else(|| RunError::UnknownTransition { index, name: name.to_string() })?;
        let next = step(configs.last().unwrap(), t).map_err(|error| RunError::Step { index, error })?;
        configs.push(next);
    }
    let halting = configs.last().unwrap().state == m.halt();
    Ok(Run { transitions: names.iter().map(|n| n.as_ref().to_string()).collect(), configs, halting })
}

/// Shortest halting run of at most `max_steps` transitions, by breadth-first search.
pub fn bounded_halting_search(m: &MinskyMachine, max_steps: usize) -> Option<Run> {
    let start = MachineConfig::initial(m);
    let mut parent: HashMap<MachineConfig, Option<(MachineConfig, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((cfg, depth)) = queue.pop_front() {
        if cfg.state == m.halt() {
            let mut names = Vec::new();
            let mut cur = cfg;
            while let Some(Some((prev, t))) = parent.get(&cur).cloned() {
                names.push(m.transitions()[t].name.clone());
                cur = prev;
            }
            names.reverse();
            return Some(run(m, &names).expect("search only follows valid steps"));
        }
        if depth == max_steps {
            continue;
        }
        for (ti, t) in m.transitions().iter().enumerate() {
            if let Ok(next) = step(&cfg, t) {
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((cfg.clone(), ti)));
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    None
}
