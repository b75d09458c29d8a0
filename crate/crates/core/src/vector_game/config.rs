use std::collections::BTreeSet;
use std::fmt;

use super::spec::{GameError, GameSpec, Lattice, Location, Player};

/// Pebble counts per location, indexed by the lattice's lexicographic
/// location order. Two configs are equal iff they hold the same multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlayerConfig {
    counts: Vec<u16>,
}

impl PlayerConfig {
    /// All `n` pebbles at the initial location.
    pub fn initial(lattice: &Lattice, n: u64) -> Result<Self, GameError> {
        let n = u16::try_from(n).map_err(|_| GameError::TooManyPebbles(n))?;
        let mut counts = vec![0; lattice.size()];
        counts[0] = n;
        Ok(PlayerConfig { counts })
    }

    pub fn from_locations<'a>(
        lattice: &Lattice,
        entries: impl IntoIterator<Item = (&'a Location, u64)>,
    ) -> Result<Self, GameError> {
        let mut counts = vec![0u16; lattice.size()];
        for (loc, n) in entries {
            let idx = lattice.index(loc)?;
            let total = u64::from(counts[idx]) + n;
            counts[idx] = u16::try_from(total).map_err(|_| GameError::TooManyPebbles(total))?;
        }
        Ok(PlayerConfig { counts })
    }

    #[cfg(test)]
    pub(crate) fn from_counts(counts: Vec<u16>) -> Self {
        PlayerConfig { counts }
    }

    pub fn counts(&self) -> &[u16] {
        &self.counts
    }

    pub fn count_at(&self, idx: usize) -> u32 {
        u32::from(self.counts[idx])
    }

    pub fn count(&self, lattice: &Lattice, loc: &Location) -> Result<u32, GameError> {
        Ok(self.count_at(lattice.index(loc)?))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    /// Sum of the potentials of all pebbles.
    pub fn potential(&self, lattice: &Lattice) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| u64::from(c) * u64::from(lattice.potential(i)))
            .sum()
    }

    /// Copy with one extra pebble at `idx`.
    pub fn with_extra(&self, idx: usize) -> Self {
        let mut c = self.clone();
        c.counts[idx] += 1;
        c
    }

    /// Nonzero entries in location order.
    pub fn entries<'l>(&'l self, lattice: &'l Lattice) -> impl Iterator<Item = (&'l Location, u32)> + 'l {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(i, &c)| (lattice.location(i), u32::from(c)))
    }

    pub fn display<'a>(&'a self, lattice: &'a Lattice) -> impl fmt::Display + 'a {
        ConfigDisplay { conf: self, lattice }
    }
}

struct ConfigDisplay<'a> {
    conf: &'a PlayerConfig,
    lattice: &'a Lattice,
}

impl fmt::Display for ConfigDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (loc, n)) in self.conf.entries(self.lattice).enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{loc}:{n}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameState {
    pub sys: PlayerConfig,
    pub env: PlayerConfig,
    pub turn: Player,
    pub last_was_pass: bool,
}

impl GameState {
    /// Everyone at the initial location, Environment to move.
    pub fn initial(spec: &GameSpec, ns: u64, ne: u64) -> Result<Self, GameError> {
        Ok(GameState {
            sys: PlayerConfig::initial(spec.lattice(Player::System), ns)?,
            env: PlayerConfig::initial(spec.lattice(Player::Environment), ne)?,
            turn: Player::Environment,
            last_was_pass: false,
        })
    }

    pub fn config(&self, side: Player) -> &PlayerConfig {
        match side {
            Player::System => &self.sys,
            Player::Environment => &self.env,
        }
    }

    /// State after the player to move picks `next`.
    pub fn after(&self, next: PlayerConfig) -> GameState {
        let pass = &next == self.config(self.turn);
        let (sys, env) = match self.turn {
            Player::System => (next, self.env.clone()),
            Player::Environment => (self.sys.clone(), next),
        };
        GameState { sys, env, turn: self.turn.other(), last_was_pass: pass }
    }

    /// The mover passing here ends the play.
    pub fn is_final_pass(&self, next: &PlayerConfig) -> bool {
        self.last_was_pass && next == self.config(self.turn)
    }
}

/// Limits on move enumeration: distinct results, and raw distributions tried.
#[derive(Debug, Clone, Copy)]
pub struct MoveCap {
    pub max_moves: usize,
    pub max_work: usize,
}

impl Default for MoveCap {
    fn default() -> Self {
        MoveCap { max_moves: 1_000_000, max_work: 50_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CapExceeded;

/// Every config reachable from `conf` in one move (pass included), sorted.
pub(crate) fn dense_moves(lattice: &Lattice, conf: &PlayerConfig, cap: MoveCap) -> Result<Vec<PlayerConfig>, CapExceeded> {
    let mut out = BTreeSet::new();
    let mut acc = vec![0u16; lattice.size()];
    let mut work = 0usize;
    let sources: Vec<usize> = (0..lattice.size()).filter(|&i| conf.counts[i] > 0).collect();
    spread(lattice, conf, &sources, 0, &mut acc, &mut out, &mut work, cap)?;
    Ok(out.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
fn spread(
    lattice: &Lattice,
    conf: &PlayerConfig,
    sources: &[usize],
    k: usize,
    acc: &mut Vec<u16>,
    out: &mut BTreeSet<PlayerConfig>,
    work: &mut usize,
    cap: MoveCap,
) -> Result<(), CapExceeded> {
    *work += 1;
    if *work > cap.max_work {
        return Err(CapExceeded);
    }
    let Some(&src) = sources.get(k) else {
        out.insert(PlayerConfig { counts: acc.clone() });
        return if out.len() > cap.max_moves { Err(CapExceeded) } else { Ok(()) };
    };
    let up = lattice.up_set(src);
    place(lattice, conf, sources, k, up, 0, conf.counts[src], acc, out, work, cap)
}

#[allow(clippy::too_many_arguments)]
fn place(
    lattice: &Lattice,
    conf: &PlayerConfig,
    sources: &[usize],
    k: usize,
    up: &[usize],
    j: usize,
    left: u16,
    acc: &mut Vec<u16>,
    out: &mut BTreeSet<PlayerConfig>,
    work: &mut usize,
    cap: MoveCap,
) -> Result<(), CapExceeded> {
    if j + 1 == up.len() {
        acc[up[j]] += left;
        let r = spread(lattice, conf, sources, k + 1, acc, out, work, cap);
        acc[up[j]] -= left;
        return r;
    }
    for take in 0..=left {
        acc[up[j]] += take;
        let r = place(lattice, conf, sources, k, up, j + 1, left - take, acc, out, work, cap);
        acc[up[j]] -= take;
        r?;
    }
    Ok(())
}

/// All configs `player` can reach from `conf` in one move, pass included.
pub fn enumerate_moves(conf: &PlayerConfig, spec: &GameSpec, player: Player) -> Result<BTreeSet<PlayerConfig>, GameError> {
    let lattice = spec.lattice(player);
    if conf.counts.len() != lattice.size() {
        return Err(GameError::DimensionMismatch { expected: lattice.size(), got: conf.counts.len() });
    }
    dense_moves(lattice, conf, MoveCap::default())
        .map(|v| v.into_iter().collect())
        .map_err(|_| GameError::Overflow("move enumeration"))
}

/// Whether `(sys, env)` meets at least one acceptance condition.
pub fn config_satisfies(sys: &PlayerConfig, env: &PlayerConfig, spec: &GameSpec) -> bool {
    spec.compiled_victory().iter().any(|cond| {
        cond.iter().all(|&(side, idx, c)| {
            let conf = if side == Player::System { sys } else { env };
            c.holds(conf.count_at(idx))
        })
    })
}
