use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::logic::is_identifier;

/// Locations per side beyond which the lattice is not materialised.
pub const MAX_LOCATIONS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("location dimension {got} does not match {expected} letters")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("location component {value} exceeds bound {bound}")]
    OutOfBound { value: u32, bound: u32 },
    #[error("letter `{0}` is declared for both players or twice")]
    DuplicateLetter(String),
    #[error("invalid letter name `{0}`")]
    InvalidLetter(String),
    #[error("lattice with bound {bound} over {dim} letters has too many locations")]
    LatticeTooLarge { dim: usize, bound: u32 },
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("{0} pebbles exceed the supported maximum of {max}", max = u16::MAX)]
    TooManyPebbles(u64),
    #[error("anchor search precondition violated: P does not hold at {0}")]
    AnchorPrecondition(String),
    #[error("need at least minind = {minind} Environment pebbles, got {got}")]
    BelowMinind { minind: u64, got: u64 },
    #[error("illegal move by {player}: {detail}")]
    IllegalMove { player: Player, detail: String },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Environment,
    System,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Environment => Player::System,
            Player::System => Player::Environment,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Player::Environment => "E",
            Player::System => "S",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Environment => "Environment",
            Player::System => "System",
        })
    }
}

/// Count vector over one player's letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Location(pub Vec<u32>);

impl Location {
    pub fn initial(dim: usize) -> Self {
        Location(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// `to` is reachable from `from` when it dominates it componentwise.
pub fn reachable(from: &Location, to: &Location) -> Result<bool, GameError> {
    if from.dim() != to.dim() {
        return Err(GameError::DimensionMismatch { expected: from.dim(), got: to.dim() });
    }
    Ok(from.0.iter().zip(&to.0).all(|(a, b)| b >= a))
}

/// Materialised location lattice `{0..=bound}^dim` with locations indexed in
/// lexicographic order (first letter most significant).
#[derive(Debug, Clone)]
pub struct Lattice {
    dim: usize,
    bound: u32,
    locations: Vec<Location>,
    up: Vec<Vec<usize>>,
    succ: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn new(dim: usize, bound: u32) -> Result<Self, GameError> {
        let side = bound as usize + 1;
        let mut size = 1usize;
        for _ in 0..dim {
            size = size
                .checked_mul(side)
                .filter(|&s| s <= MAX_LOCATIONS)
                .ok_or(GameError::LatticeTooLarge { dim, bound })?;
        }
        let locations: Vec<Location> = (0..size)
            .map(|mut idx| {
                let mut v = vec![0u32; dim];
                for slot in v.iter_mut().rev() {
                    *slot = (idx % side) as u32;
                    idx /= side;
                }
                Location(v)
            })
            .collect();
        let up = locations
            .iter()
            .map(|l| (0..size).filter(|&j| locations[j].0.iter().zip(&l.0).all(|(m, n)| m >= n)).collect())
            .collect();
        let succ = locations
            .iter()
            .map(|l| {
                (0..dim)
                    .filter(|&i| l.0[i] < bound)
                    .map(|i| {
                        let mut m = l.clone();
                        m.0[i] += 1;
                        Self::index_in(&m, side)
                    })
                    .collect()
            })
            .collect();
        Ok(Lattice { dim, bound, locations, up, succ })
    }

    fn index_in(l: &Location, side: usize) -> usize {
        l.0.iter().fold(0, |acc, &v| acc * side + v as usize)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn size(&self) -> usize {
        self.locations.len()
    }

    pub fn location(&self, idx: usize) -> &Location {
        &self.locations[idx]
    }

    pub fn locations(&self) -> &[Location] {
        &self.locations
    }

    pub fn index(&self, l: &Location) -> Result<usize, GameError> {
        self.check(l)?;
        Ok(Self::index_in(l, self.bound as usize + 1))
    }

    pub fn check(&self, l: &Location) -> Result<(), GameError> {
        if l.dim() != self.dim {
            return Err(GameError::DimensionMismatch { expected: self.dim, got: l.dim() });
        }
        if let Some(&v) = l.0.iter().find(|&&v| v > self.bound) {
            return Err(GameError::OutOfBound { value: v, bound: self.bound });
        }
        Ok(())
    }

    /// Indices of all locations reachable from `idx`, including itself.
    pub fn up_set(&self, idx: usize) -> &[usize] {
        &self.up[idx]
    }

    /// Locations that raise exactly one component by one.
    pub fn successors(&self, idx: usize) -> &[usize] {
        &self.succ[idx]
    }

    pub fn potential(&self, idx: usize) -> u32 {
        self.locations[idx].0.iter().map(|v| self.bound - v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    Exactly(u32),
    AtLeast(u32),
}

impl Constraint {
    pub fn holds(self, count: u32) -> bool {
        match self {
            Constraint::Exactly(n) => count == n,
            Constraint::AtLeast(n) => count >= n,
        }
    }

    pub fn constant(self) -> u32 {
        match self {
            Constraint::Exactly(n) | Constraint::AtLeast(n) => n,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Exactly(n) => write!(f, "= {n}"),
            Constraint::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// Per-location constraints; unmentioned locations default to `>= 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AcceptanceCondition {
    pub constraints: BTreeMap<(Player, Location), Constraint>,
}

impl AcceptanceCondition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, side: Player, loc: Location, c: Constraint) -> Self {
        self.constraints.insert((side, loc), c);
        self
    }
}

/// A parametrised vector game: letters per player, bound, and victory
/// condition. Building one materialises both location lattices.
#[derive(Debug, Clone)]
pub struct GameSpec {
    sys_letters: Vec<String>,
    env_letters: Vec<String>,
    bound: u32,
    victory: Vec<AcceptanceCondition>,
    sys_lattice: Lattice,
    env_lattice: Lattice,
    /// `victory` with locations resolved to lattice indices.
    compiled: Vec<Vec<(Player, usize, Constraint)>>,
}

impl GameSpec {
    pub fn new(
        sys_letters: Vec<String>,
        env_letters: Vec<String>,
        bound: u32,
        victory: Vec<AcceptanceCondition>,
    ) -> Result<Self, GameError> {
        let mut seen = std::collections::BTreeSet::new();
        for l in sys_letters.iter().chain(&env_letters) {
            if !is_identifier(l) {
                return Err(GameError::InvalidLetter(l.clone()));
            }
            if !seen.insert(l) {
                return Err(GameError::DuplicateLetter(l.clone()));
            }
        }
        let sys_lattice = Lattice::new(sys_letters.len(), bound)?;
        let env_lattice = Lattice::new(env_letters.len(), bound)?;
        let mut compiled = Vec::with_capacity(victory.len());
        for cond in &victory {
            let mut c = Vec::new();
            for ((side, loc), constraint) in &cond.constraints {
                let lat = if *side == Player::System { &sys_lattice } else { &env_lattice };
                c.push((*side, lat.index(loc)?, *constraint));
            }
            compiled.push(c);
        }
        Ok(GameSpec { sys_letters, env_letters, bound, victory, sys_lattice, env_lattice, compiled })
    }

    pub fn sys_letters(&self) -> &[String] {
        &self.sys_letters
    }

    pub fn env_letters(&self) -> &[String] {
        &self.env_letters
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn victory(&self) -> &[AcceptanceCondition] {
        &self.victory
    }

    pub fn lattice(&self, side: Player) -> &Lattice {
        match side {
            Player::System => &self.sys_lattice,
            Player::Environment => &self.env_lattice,
        }
    }

    pub(crate) fn compiled_victory(&self) -> &[Vec<(Player, usize, Constraint)>] {
        &self.compiled
    }

    /// Largest constant in the victory condition (`K`), 0 when there is none.
    pub fn max_constant(&self) -> u32 {
        self.victory
            .iter()
            .flat_map(|c| c.constraints.values())
            .map(|c| c.constant())
            .max()
            .unwrap_or(0)
    }

    pub fn parse(text: &str) -> Result<Self, GameError> {
        let err = |line: usize, msg: String| GameError::Format { line, msg };
        let mut sys = None;
        let mut env = None;
        let mut bound = None;
        let mut victory: Vec<(usize, Vec<ConstraintLine>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let code = raw.split('#').next().unwrap_or("").trim();
            if code.is_empty() {
                continue;
            }
            if let Some(rest) = code.strip_prefix("letters") {
                let (side, names) = rest.split_once('=').ok_or_else(|| err(line, "expected `letters S = ...`".into()))?;
                let names: Vec<String> = names.split_whitespace().map(str::to_string).collect();
                let slot = match side.trim() {
                    "S" => &mut sys,
                    "E" => &mut env,
                    other => return Err(err(line, format!("unknown side `{other}`"))),
                };
                if slot.is_some() {
                    return Err(err(line, "letters declared twice".into()));
                }
                *slot = Some(names);
            } else if let Some(rest) = code.strip_prefix("bound") {
                let v = rest.trim().strip_prefix('=').ok_or_else(|| err(line, "expected `bound = N`".into()))?;
                bound = Some(v.trim().parse::<u32>().map_err(|e| err(line, format!("bad bound: {e}")))?);
            } else if code == "accept:" {
                victory.push((line, Vec::new()));
            } else {
                let block = victory
                    .last_mut()
                    .ok_or_else(|| err(line, format!("unexpected `{code}` outside an `accept:` block")))?;
                let (side, vec, c) = parse_constraint_line(code).map_err(|m| err(line, m))?;
                block.1.push((line, side, vec, c));
            }
        }
        let sys = sys.unwrap_or_default();
        let env = env.unwrap_or_default();
        let bound = bound.ok_or_else(|| err(1, "missing `bound = N`".into()))?;
        let mut conds = Vec::new();
        for (_, entries) in victory {
            let mut cond = AcceptanceCondition::new();
            for (line, side, vec, c) in entries {
                let dim = if side == Player::System { sys.len() } else { env.len() };
                if vec.len() != dim {
                    return Err(err(line, format!("vector has {} entries, {side} has {dim} letters", vec.len())));
                }
                if let Some(&v) = vec.iter().find(|&&v| v > bound) {
                    return Err(err(line, format!("component {v} exceeds bound {bound}")));
                }
                if cond.constraints.insert((side, Location(vec)), c).is_some() {
                    return Err(err(line, "location constrained twice in one block".into()));
                }
            }
            conds.push(cond);
        }
        GameSpec::new(sys, env, bound, conds)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "letters S = {}\nletters E = {}\nbound = {}\n",
            self.sys_letters.join(" "),
            self.env_letters.join(" "),
            self.bound
        );
        for cond in &self.victory {
            out.push_str("accept:\n");
            for ((side, loc), c) in &cond.constraints {
                out.push_str(&format!("  {}{} {}\n", side.short(), loc, c));
            }
        }
        out
    }
}

/// Line number, side, location vector and constraint of one `accept:` entry.
type ConstraintLine = (usize, Player, Vec<u32>, Constraint);

fn parse_constraint_line(code: &str) -> Result<(Player, Vec<u32>, Constraint), String> {
    let side = match code.chars().next() {
        Some('S') => Player::System,
        Some('E') => Player::Environment,
        _ => return Err(format!("expected `S<..>` or `E<..>`, got `{code}`")),
    };
    let rest = code[1..].trim_start();
    let body = rest.strip_prefix('<').ok_or("expected `<` after side")?;
    let close = body.find('>').ok_or("unclosed `<`")?;
    let inner = body[..close].trim();
    let vec = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad component `{t}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?
    };
    let tail = body[close + 1..].trim();
    let (ctor, num): (fn(u32) -> Constraint, &str) = if let Some(n) = tail.strip_prefix(">=") {
        (Constraint::AtLeast, n)
    } else if let Some(n) = tail.strip_prefix('=') {
        (Constraint::Exactly, n)
    } else {
        return Err(format!("expected `= n` or `>= n`, got `{tail}`"));
    };
    let n = num.trim().parse::<u32>().map_err(|e| format!("bad constant `{}`: {e}", num.trim()))?;
    Ok((side, vec, ctor(n)))
}
