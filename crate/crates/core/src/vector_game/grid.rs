use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::anchor::compute_minind;
use super::solve::{solve_with_budget, Budget, SolveError};
use super::spec::{GameError, GameSpec, Player};

/// Grids beyond this many cells are refused outright.
pub const MAX_GRID_CELLS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Won(Player),
    Unknown(String),
}

impl Cell {
    pub fn symbol(&self) -> &'static str {
        match self {
            Cell::Won(Player::System) => "S",
            Cell::Won(Player::Environment) => "E",
            Cell::Unknown(_) => "?",
        }
    }

    pub fn winner(&self) -> Option<Player> {
        match self {
            Cell::Won(p) => Some(*p),
            Cell::Unknown(_) => None,
        }
    }
}

/// Winners over `nS ∈ [0, cut]` (columns) and `nE ∈ [0, minind]` (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridReport {
    pub cut: u64,
    pub minind: u64,
    pub rows: Vec<Vec<Cell>>,
}

impl GridReport {
    pub fn cell(&self, ns: u64, ne: u64) -> &Cell {
        &self.rows[ne as usize][ns as usize]
    }

    pub fn unknown_cells(&self) -> usize {
        self.rows.iter().flatten().filter(|c| c.winner().is_none()).count()
    }

    /// `Some(true)` if System wins some cell, `Some(false)` if Environment
    /// wins them all, `None` if no System cell was found but some are unknown.
    pub fn system_wins_somewhere(&self) -> Option<bool> {
        let cells = || self.rows.iter().flatten();
        if cells().any(|c| c.winner() == Some(Player::System)) {
            Some(true)
        } else if cells().any(|c| c.winner().is_none()) {
            None
        } else {
            Some(false)
        }
    }

    pub fn render_text(&self) -> String {
        let width = self.cut.to_string().len().max(1);
        let label = self.minind.to_string().len().max(5);
        let mut out = format!("{:>label$}", "nE\\nS");
        for ns in 0..=self.cut {
            write!(out, " {ns:>width$}").unwrap();
        }
        out.push('\n');
        for (ne, row) in self.rows.iter().enumerate() {
            write!(out, "{ne:>label$}").unwrap();
            for c in row {
                write!(out, " {:>width$}", c.symbol()).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out = String::from("ne\tns\twinner\n");
        for (ne, row) in self.rows.iter().enumerate() {
            for (ns, c) in row.iter().enumerate() {
                let w = match c {
                    Cell::Won(p) => p.to_string(),
                    Cell::Unknown(why) => format!("unknown ({why})"),
                };
                writeln!(out, "{ne}\t{ns}\t{w}").unwrap();
            }
        }
        out
    }
}

fn solve_cell(spec: &GameSpec, ns: u64, ne: u64, budget: Budget) -> Cell {
    match solve_with_budget(spec, ns, ne, budget) {
        Ok(sol) => Cell::Won(sol.winner),
        Err(e) => Cell::Unknown(e.to_string()),
    }
}

/// Runs `f` on a pool of `jobs` threads, or on rayon's global pool.
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(f))
            .unwrap_or_else(|_| panic!("could not start a thread pool with {n} threads")),
        None => f(),
    }
}

/// Solves every cell of `[0,cut]×[0,minind]`. Cells that exceed the budget
/// are marked unknown; the layout of the result never depends on `jobs`.
pub fn decide_grid(
    spec: &GameSpec,
    cut: u64,
    minind_override: Option<u64>,
    budget: Budget,
    jobs: Option<usize>,
) -> Result<GridReport, GameError> {
    let minind = match minind_override {
        Some(m) => m,
        None => compute_minind(spec)?,
    };
    let cells = (cut as u128 + 1) * (minind as u128 + 1);
    if cells > MAX_GRID_CELLS as u128 {
        return Err(GameError::Overflow("grid size"));
    }
    let coords: Vec<(u64, u64)> = (0..=minind).flat_map(|ne| (0..=cut).map(move |ns| (ne, ns))).collect();
    let solved: Vec<Cell> = with_jobs(jobs, || {
        coords.par_iter().map(|&(ne, ns)| solve_cell(spec, ns, ne, budget)).collect()
    });
    let rows = solved.chunks(cut as usize + 1).map(<[Cell]>::to_vec).collect();
    Ok(GridReport { cut, minind, rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    /// Smallest stabilising `nS` found, if any up to the search limit.
    pub cut: Option<u64>,
    pub window: u64,
    pub minind: u64,
    pub max_ns: u64,
    /// Always true: stabilisation over a finite window proves nothing.
    pub heuristic: bool,
}

impl std::fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.cut {
            Some(c) => writeln!(f, "cut: {c}")?,
            None => writeln!(f, "cut: none up to nS={}", self.max_ns)?,
        }
        writeln!(f, "window: {}", self.window)?;
        writeln!(f, "minind: {}", self.minind)?;
        writeln!(f, "heuristic: {}", self.heuristic)
    }
}

/// Smallest `c ≤ max_ns` such that for every `nE ≤ minind` the winner is the
/// same for all `nS ∈ [c, c+window)`. Empirical only.
pub fn probe_cut(spec: &GameSpec, window: u64, max_ns: u64, budget: Budget) -> Result<ProbeReport, SolveError> {
    assert!(window >= 1, "probe window must be at least 1");
    let minind = compute_minind(spec)?;
    let mut cache: BTreeMap<(u64, u64), Player> = BTreeMap::new();
    let mut winner = |ns: u64, ne: u64| -> Result<Player, SolveError> {
        if let Some(&w) = cache.get(&(ns, ne)) {
            return Ok(w);
        }
        let w = solve_with_budget(spec, ns, ne, budget)?.winner;
        cache.insert((ns, ne), w);
        Ok(w)
    };
    let mut cut = None;
    'search: for c in 0..=max_ns {
        for ne in 0..=minind {
            let first = winner(c, ne)?;
            for ns in c + 1..c + window {
                if winner(ns, ne)? != first {
                    continue 'search;
                }
            }
        }
        cut = Some(c);
        break;
    }
    Ok(ProbeReport { cut, window, minind, max_ns, heuristic: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector_game::spec::{AcceptanceCondition, Constraint, Location};

    fn threshold_game() -> GameSpec {
        let c = AcceptanceCondition::new().with(Player::Environment, Location(vec![0]), Constraint::AtLeast(1));
        GameSpec::new(vec!["a".into()], vec!["b".into()], 0, vec![c]).unwrap()
    }

    #[test]
    fn threshold_grid() {
        let g = decide_grid(&threshold_game(), 1, Some(1), Budget::default(), Some(2)).unwrap();
        let pattern: Vec<Vec<&str>> = g.rows.iter().map(|r| r.iter().map(Cell::symbol).collect()).collect();
        assert_eq!(pattern, vec![vec!["E", "E"], vec!["S", "S"]]);
        assert_eq!(g.system_wins_somewhere(), Some(true));
        assert_eq!(g.render_text(), "nE\\nS 0 1\n    0 E E\n    1 S S\n");
        assert!(g.render_tsv().contains("1\t0\tSystem\n"));
    }

    #[test]
    fn unknown_cells_are_reported() {
        let c = AcceptanceCondition::new();
        let g = GameSpec::new(vec!["a".into()], vec!["b".into()], 2, vec![c]).unwrap();
        let tiny = Budget { max_states: 2, ..Budget::default() };
        let r = decide_grid(&g, 2, Some(1), tiny, None).unwrap();
        assert!(r.unknown_cells() > 0);
        assert_eq!(r.cell(0, 0), &Cell::Won(Player::System));
    }

    #[test]
    fn probe_on_fixtures() {
        let all = GameSpec::new(vec!["a".into()], vec!["b".into()], 1, vec![AcceptanceCondition::new()]).unwrap();
        let r = probe_cut(&all, 3, 5, Budget::default()).unwrap();
        assert_eq!(r.cut, Some(0));
        assert!(r.heuristic);
        assert!(r.to_string().contains("heuristic: true"));
        assert_eq!(probe_cut(&threshold_game(), 3, 5, Budget::default()).unwrap().cut, Some(0));
    }
}
