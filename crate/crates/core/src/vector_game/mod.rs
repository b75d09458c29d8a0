//! Parametrised vector games: exact solving, pebble monotonicity for
//! Environment, and the bounded grid search.

mod config;
mod grid;
mod anchor;
mod lift;
mod play;
mod solve;
mod spec;

pub use config::{config_satisfies, enumerate_moves, GameState, MoveCap, PlayerConfig};
pub use grid::{decide_grid, probe_cut, Cell, GridReport, ProbeReport, MAX_GRID_CELLS};
pub use anchor::{compute_minind, find_anchor, find_anchor_from, holds_p, num_after, potential};
pub use lift::{lift_check, lift_env_strategy, verify_lift_exhaustive, LiftCheck, LiftedEnvStrategy};
pub use play::{play, PassStrategy, PlayRecord, RandomStrategy, TableStrategy, VectorStrategy};
pub use solve::{solve, solve_with_budget, Budget, Solution, SolveError, StrategyTable};
pub use spec::{
    reachable, AcceptanceCondition, Constraint, GameError, GameSpec, Lattice, Location, Player, MAX_LOCATIONS,
};
