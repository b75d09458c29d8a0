use std::rc::Rc;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use thiserror::Error;

use super::config::{config_satisfies, dense_moves, GameState, MoveCap, PlayerConfig};
use super::spec::{GameError, GameSpec, Player};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: &'static str, limit: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_states: usize,
    pub moves: MoveCap,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_states: 10_000_000, moves: MoveCap::default() }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Entry {
    value: Player,
    choice: PlayerConfig,
}

/// Optimal move and value for every state reachable from the initial one.
#[derive(Debug, Default)]
pub struct StrategyTable {
    entries: FxHashMap<GameState, Entry>,
}

impl StrategyTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Winner under optimal play from `state`.
    pub fn winner_at(&self, state: &GameState) -> Option<Player> {
        self.entries.get(state).map(|e| e.value)
    }

    /// Move the player on turn should make at `state`.
    pub fn best_move(&self, state: &GameState) -> Option<&PlayerConfig> {
        self.entries.get(state).map(|e| &e.choice)
    }

    pub fn states(&self) -> impl Iterator<Item = &GameState> {
        self.entries.keys()
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub winner: Player,
    pub table: Arc<StrategyTable>,
}

pub fn solve(spec: &GameSpec, ns: u64, ne: u64) -> Result<Solution, SolveError> {
    solve_with_budget(spec, ns, ne, Budget::default())
}

pub fn solve_with_budget(spec: &GameSpec, ns: u64, ne: u64, budget: Budget) -> Result<Solution, SolveError> {
    let start = GameState::initial(spec, ns, ne)?;
    let mut solver = Solver { spec, budget, table: StrategyTable::default(), moves: FxHashMap::default() };
    let winner = solver.value(&start)?;
    Ok(Solution { winner, table: Arc::new(solver.table) })
}

struct Solver<'a> {
    spec: &'a GameSpec,
    budget: Budget,
    table: StrategyTable,
    moves: FxHashMap<(Player, PlayerConfig), Rc<Vec<PlayerConfig>>>,
}

impl Solver<'_> {
    fn moves_of(&mut self, side: Player, conf: &PlayerConfig) -> Result<Rc<Vec<PlayerConfig>>, SolveError> {
        if let Some(m) = self.moves.get(&(side, conf.clone())) {
            return Ok(Rc::clone(m));
        }
        let m = dense_moves(self.spec.lattice(side), conf, self.budget.moves)
            .map_err(|_| SolveError::Budget { what: "moves per configuration", limit: self.budget.moves.max_moves })?;
        let m = Rc::new(m);
        self.moves.insert((side, conf.clone()), Rc::clone(&m));
        Ok(m)
    }

    /// Exhaustive minimax: every option is explored so that the table covers
    /// all reachable states, not just those on the principal line.
    fn value(&mut self, state: &GameState) -> Result<Player, SolveError> {
        if let Some(e) = self.table.entries.get(state) {
            return Ok(e.value);
        }
        if self.table.entries.len() >= self.budget.max_states {
            return Err(SolveError::Budget { what: "memo entries", limit: self.budget.max_states });
        }
        let mover = state.turn;
        let options = self.moves_of(mover, state.config(mover))?;
        let mut best: Option<(Player, usize)> = None;
        for (i, next) in options.iter().enumerate() {
            let outcome = if state.is_final_pass(next) {
                if config_satisfies(&state.sys, &state.env, self.spec) {
                    Player::System
                } else {
                    Player::Environment
                }
            } else {
                self.value(&state.after(next.clone()))?
            };
            match best {
                Some((v, _)) if v == mover || outcome != mover => {}
                _ => best = Some((outcome, i)),
            }
        }
        let (value, i) = best.expect("pass is always available");
        self.table.entries.insert(state.clone(), Entry { value, choice: options[i].clone() });
        Ok(value)
    }
}
