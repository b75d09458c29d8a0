use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::logic::{is_identifier, RESERVED};

/// Letters the reduction reserves for itself.
pub const REDUCTION_LETTERS: [&str; 9] = ["inc0", "dec0", "inc1", "dec1", "noop", "oks", "kos", "oke", "koe"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("name `{0}` is reserved")]
    Reserved(String),
    #[error("name `{0}` is used twice")]
    Duplicate(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("counter must be c0 or c1, got `{0}`")]
    BadCounter(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransitionKind {
    Inc(usize),
    Dec(usize),
    Zero(usize),
}

impl TransitionKind {
    pub fn counter(self) -> usize {
        match self {
            TransitionKind::Inc(i) | TransitionKind::Dec(i) | TransitionKind::Zero(i) => i,
        }
    }

    /// Upkeep letter System plays after this transition.
    pub fn upkeep(self) -> &'static str {
        match self {
            TransitionKind::Inc(0) => "inc0",
            TransitionKind::Inc(_) => "inc1",
            TransitionKind::Dec(0) => "dec0",
            TransitionKind::Dec(_) => "dec1",
            TransitionKind::Zero(_) => "noop",
        }
    }
}

impl fmt::Display for TransitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransitionKind::Inc(i) => write!(f, "inc c{i}"),
            TransitionKind::Dec(i) => write!(f, "dec c{i}"),
            TransitionKind::Zero(i) => write!(f, "zero c{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub name: String,
    pub source: String,
    pub target: String,
    pub kind: TransitionKind,
}

impl Transition {
    pub fn new(name: &str, source: &str, target: &str, kind: TransitionKind) -> Self {
        Transition { name: name.into(), source: source.into(), target: target.into(), kind }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {} {}", self.name, self.source, self.target, self.kind)
    }
}

/// Two-counter machine. States and transitions keep declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinskyMachine {
    states: Vec<String>,
    init: String,
    halt: String,
    transitions: Vec<Transition>,
}

impl MinskyMachine {
    pub fn new(
        states: Vec<String>,
        init: &str,
        halt: &str,
        transitions: Vec<Transition>,
    ) -> Result<Self, MachineError> {
        let mut names = BTreeSet::new();
        for n in states.iter().chain(transitions.iter().map(|t| &t.name)) {
            if !is_identifier(n) {
                return Err(MachineError::InvalidName(n.clone()));
            }
            if RESERVED.contains(&n.as_str()) || REDUCTION_LETTERS.contains(&n.as_str()) {
                return Err(MachineError::Reserved(n.clone()));
            }
            if !names.insert(n.clone()) {
                return Err(MachineError::Duplicate(n.clone()));
            }
        }
        let known = |s: &str| {
            if states.iter().any(|q| q == s) {
                Ok(())
            } else {
                Err(MachineError::UnknownState(s.to_string()))
            }
        };
        known(init)?;
        known(halt)?;
        for t in &transitions {
            known(&t.source)?;
            known(&t.target)?;
            if t.kind.counter() > 1 {
                return Err(MachineError::BadCounter(format!("c{}", t.kind.counter())));
            }
        }
        Ok(MinskyMachine { states, init: init.into(), halt: halt.into(), transitions })
    }

    /// The four-state example: `t0` increments twice, `t1`/`t2` decrement, `t3` zero-tests.
    pub fn example() -> Self {
        use TransitionKind::*;
        MinskyMachine::new(
            ["i", "q1", "q2", "h"].map(String::from).to_vec(),
            "i",
            "h",
            vec![
                Transition::new("t0", "i", "i", Inc(0)),
                Transition::new("t1", "i", "q1", Dec(0)),
                Transition::new("t2", "q1", "q2", Dec(0)),
                Transition::new("t3", "q2", "h", Zero(0)),
            ],
        )
        .expect("example machine is well formed")
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn init(&self) -> &str {
        &self.init
    }

    pub fn halt(&self) -> &str {
        &self.halt
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, name: &str) -> Option<&Transition> {
        self.transitions.iter().find(|t| t.name == name)
    }

    pub fn parse(text: &str) -> Result<Self, MachineError> {
        let err = |line: usize, msg: String| MachineError::Format { line, msg };
        let mut states = None;
        let mut init = None;
        let mut halt = None;
        let mut transitions = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let code = raw.split('#').next().unwrap_or("").trim();
            if code.is_empty() {
                continue;
            }
            let words: Vec<&str> = code.split_whitespace().collect();
            match words[0] {
                "states" => states = Some(words[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>()),
                "init" | "halt" => {
                    let [_, q] = words[..] else {
                        return Err(err(line, format!("expected `{} <state>`", words[0])));
                    };
                    if words[0] == "init" {
                        init = Some(q.to_string());
                    } else {
                        halt = Some(q.to_string());
                    }
                }
                _ => transitions.push(parse_transition(code).map_err(|m| err(line, m))?),
            }
        }
        let states = states.ok_or_else(|| err(1, "missing `states` line".into()))?;
        let init = init.ok_or_else(|| err(1, "missing `init` line".into()))?;
        let halt = halt.ok_or_else(|| err(1, "missing `halt` line".into()))?;
        MinskyMachine::new(states, &init, &halt, transitions)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("states {}\ninit {}\nhalt {}\n", self.states.join(" "), self.init, self.halt);
        for t in &self.transitions {
            out.push_str(&format!("{t}\n"));
        }
        out
    }
}

fn parse_transition(code: &str) -> Result<Transition, String> {
    let (name, rest) = code.split_once(':').ok_or("expected `name: source -> target kind counter`")?;
    let words: Vec<&str> = rest.split_whitespace().collect();
    let [source, "->", target, kind, counter] = words[..] else {
        return Err(format!("malformed transition `{}`", code.trim()));
    };
    let c = match counter {
        "c0" => 0,
        "c1" => 1,
        other => return Err(format!("counter must be c0 or c1, got `{other}`")),
    };
    let kind = match kind {
        "inc" => TransitionKind::Inc(c),
        "dec" => TransitionKind::Dec(c),
        "zero" => TransitionKind::Zero(c),
        other => return Err(format!("unknown transition kind `{other}`")),
    };
    Ok(Transition::new(name.trim(), source, target, kind))
}
