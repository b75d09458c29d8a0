use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::logic::{is_identifier, parse_braced_groups, Owner, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("process `{0}` appears in more than one pool")]
    PoolOverlap(String),
    #[error("invalid process id `{0}`")]
    InvalidProcess(String),
    #[error("position {index}: unknown action `{action}`")]
    UnknownAction { index: usize, action: String },
    #[error("position {index}: unknown process `{process}`")]
    UnknownProcess { index: usize, process: String },
    #[error("position {index}: {owner} action `{action}` played on foreign process `{process}`")]
    Ownership { index: usize, owner: Owner, action: String, process: String },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// The three pairwise disjoint process pools.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProcessPools {
    sys: BTreeSet<String>,
    env: BTreeSet<String>,
    mixed: BTreeSet<String>,
}

fn valid_process_id(p: &str) -> bool {
    !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ProcessPools {
    pub fn new<I, J, K>(sys: I, env: J, mixed: K) -> Result<Self, WordError>
    where
        I: IntoIterator,
        I::Item: Into<String>,
        J: IntoIterator,
        J::Item: Into<String>,
        K: IntoIterator,
        K::Item: Into<String>,
    {
        let sys: BTreeSet<String> = sys.into_iter().map(Into::into).collect();
        let env: BTreeSet<String> = env.into_iter().map(Into::into).collect();
        let mixed: BTreeSet<String> = mixed.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for p in sys.iter().chain(&env).chain(&mixed) {
            if !valid_process_id(p) {
                return Err(WordError::InvalidProcess(p.clone()));
            }
            if !seen.insert(p) {
                return Err(WordError::PoolOverlap(p.clone()));
            }
        }
        Ok(ProcessPools { sys, env, mixed })
    }

    /// Partitioned pools with System processes `0..n_sys` and Environment
    /// processes named by `env`.
    pub fn partitioned(n_sys: usize, env: &[&str]) -> Self {
        ProcessPools::new((0..n_sys).map(|i| i.to_string()), env.iter().copied(), Vec::<String>::new())
            .expect("numeric System ids never clash with the given names")
    }

    pub fn sys(&self) -> &BTreeSet<String> {
        &self.sys
    }

    pub fn env(&self) -> &BTreeSet<String> {
        &self.env
    }

    pub fn mixed(&self) -> &BTreeSet<String> {
        &self.mixed
    }

    pub fn len(&self) -> usize {
        self.sys.len() + self.env.len() + self.mixed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: &str) -> bool {
        self.sys.contains(p) || self.env.contains(p) || self.mixed.contains(p)
    }

    /// Whether `owner` may play on process `p`.
    pub fn playable_by(&self, owner: Owner, p: &str) -> bool {
        match owner {
            Owner::System => self.sys.contains(p) || self.mixed.contains(p),
            Owner::Environment => self.env.contains(p) || self.mixed.contains(p),
        }
    }

    /// Processes `owner` may play on, own pool first then shared ones.
    pub fn playable(&self, owner: Owner) -> impl Iterator<Item = &String> {
        let own = match owner {
            Owner::System => &self.sys,
            Owner::Environment => &self.env,
        };
        own.iter().chain(self.mixed.iter())
    }

    pub fn parse_header(line: &str) -> Result<Self, String> {
        let rest = line.trim().strip_prefix("pools").ok_or("expected `pools` header")?;
        let mut pools: [Vec<String>; 3] = Default::default();
        let mut seen = [false; 3];
        for (key, items) in parse_braced_groups(rest)? {
            let slot = match key.as_str() {
                "S" => 0,
                "E" => 1,
                "M" => 2,
                other => return Err(format!("unknown pool `{other}`")),
            };
            if seen[slot] {
                return Err(format!("pool `{key}` given twice"));
            }
            seen[slot] = true;
            pools[slot] = items;
        }
        let [s, e, m] = pools;
        ProcessPools::new(s, e, m).map_err(|e| e.to_string())
    }
}

impl fmt::Display for ProcessPools {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
        write!(f, "pools S={{{}}} E={{{}}} M={{{}}}", join(&self.sys), join(&self.env), join(&self.mixed))
    }
}

/// One letter of a data word: an action played on a process.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub action: String,
    pub process: String,
}

impl Position {
    pub fn new(action: impl Into<String>, process: impl Into<String>) -> Self {
        Position { action: action.into(), process: process.into() }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.action, self.process)
    }
}

/// A finite data word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DataWord {
    pub positions: Vec<Position>,
}

impl DataWord {
    pub fn new(positions: Vec<Position>) -> Self {
        DataWord { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn push(&mut self, p: Position) {
        self.positions.push(p);
    }

    /// Checks that every action is known and sits on a process its owner may use.
    pub fn validate(&self, pools: &ProcessPools, sig: &Signature) -> Result<(), WordError> {
        for (index, p) in self.positions.iter().enumerate() {
            let owner = sig
                .owner(&p.action)
                .ok_or_else(|| WordError::UnknownAction { index, action: p.action.clone() })?;
            if !pools.contains(&p.process) {
                return Err(WordError::UnknownProcess { index, process: p.process.clone() });
            }
            if !pools.playable_by(owner, &p.process) {
                return Err(WordError::Ownership {
                    index,
                    owner,
                    action: p.action.clone(),
                    process: p.process.clone(),
                });
            }
        }
        Ok(())
    }

    /// Parses `action@process` lines preceded by a `pools` header; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<(ProcessPools, DataWord), WordError> {
        let mut pools = None;
        let mut word = DataWord::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let code = raw.split('#').next().unwrap_or("").trim();
            if code.is_empty() {
                continue;
            }
            if pools.is_none() {
                if !code.starts_with("pools") {
                    return Err(WordError::Format { line, msg: "expected `pools S={..} E={..} M={..}` header".into() });
                }
                pools = Some(ProcessPools::parse_header(code).map_err(|msg| WordError::Format { line, msg })?);
                continue;
            }
            let (a, p) = code
                .split_once('@')
                .ok_or_else(|| WordError::Format { line, msg: format!("expected `action@process`, got `{code}`") })?;
            let (a, p) = (a.trim(), p.trim());
            if !is_identifier(a) || !valid_process_id(p) {
                return Err(WordError::Format { line, msg: format!("malformed position `{code}`") });
            }
            word.push(Position::new(a, p));
        }
        let pools = pools.ok_or(WordError::Format { line: 1, msg: "missing `pools` header".into() })?;
        Ok((pools, word))
    }

    pub fn to_file(&self, pools: &ProcessPools) -> String {
        let mut out = format!("{pools}\n");
        for p in &self.positions {
            out.push_str(&format!("{p}\n"));
        }
        out
    }
}

impl fmt::Display for DataWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.positions {
            write!(f, "({},{})", p.process, p.action)?;
        }
        Ok(())
    }
}

impl FromIterator<Position> for DataWord {
    fn from_iter<T: IntoIterator<Item = Position>>(iter: T) -> Self {
        DataWord { positions: iter.into_iter().collect() }
    }
}
