use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{config_satisfies, dense_moves, GameState, MoveCap, PlayerConfig};
use super::solve::StrategyTable;
use super::spec::{GameError, GameSpec, Player};

/// A (possibly stateful) vector-game strategy. Only asked when its player is on turn.
pub trait VectorStrategy {
    fn choose(&mut self, spec: &GameSpec, state: &GameState) -> Result<PlayerConfig, GameError>;
}

/// Plays the solver's recorded optimal move.
#[derive(Debug, Clone)]
pub struct TableStrategy {
    table: Arc<StrategyTable>,
}

impl TableStrategy {
    pub fn new(table: Arc<StrategyTable>) -> Self {
        TableStrategy { table }
    }
}

impl VectorStrategy for TableStrategy {
    fn choose(&mut self, _spec: &GameSpec, state: &GameState) -> Result<PlayerConfig, GameError> {
        self.table.best_move(state).cloned().ok_or_else(|| GameError::IllegalMove {
            player: state.turn,
            detail: "state not covered by the strategy table".into(),
        })
    }
}

/// Uniform choice among legal moves.
#[derive(Debug, Clone)]
pub struct RandomStrategy {
    rng: ChaCha8Rng,
}

impl RandomStrategy {
    pub fn new(seed: u64) -> Self {
        RandomStrategy { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl VectorStrategy for RandomStrategy {
    fn choose(&mut self, spec: &GameSpec, state: &GameState) -> Result<PlayerConfig, GameError> {
        let moves = legal_moves(spec, state)?;
        Ok(moves.choose(&mut self.rng).expect("pass is always legal").clone())
    }
}

/// Always passes.
#[derive(Debug, Clone, Copy, Default)]
pub struct PassStrategy;

impl VectorStrategy for PassStrategy {
    fn choose(&mut self, _spec: &GameSpec, state: &GameState) -> Result<PlayerConfig, GameError> {
        Ok(state.config(state.turn).clone())
    }
}

pub(crate) fn legal_moves(spec: &GameSpec, state: &GameState) -> Result<Vec<PlayerConfig>, GameError> {
    dense_moves(spec.lattice(state.turn), state.config(state.turn), MoveCap::default())
        .map_err(|_| GameError::Overflow("move enumeration"))
}

#[derive(Debug, Clone)]
pub struct PlayRecord {
    /// States in order, starting with the initial one and ending with the final one.
    pub states: Vec<GameState>,
    pub non_pass_moves: usize,
    pub winner: Player,
}

impl PlayRecord {
    pub fn final_state(&self) -> &GameState {
        self.states.last().expect("a play has at least one state")
    }
}

/// Plays from the initial configuration until the first double pass.
/// Every chosen move is checked for legality.
pub fn play(
    spec: &GameSpec,
    ns: u64,
    ne: u64,
    sys: &mut dyn VectorStrategy,
    env: &mut dyn VectorStrategy,
) -> Result<PlayRecord, GameError> {
    let mut state = GameState::initial(spec, ns, ne)?;
    let mut states = vec![state.clone()];
    let mut non_pass_moves = 0;
    loop {
        let strategy: &mut dyn VectorStrategy = if state.turn == Player::System { &mut *sys } else { &mut *env };
        let next = strategy.choose(spec, &state)?;
        if legal_moves(spec, &state)?.binary_search(&next).is_err() {
            return Err(GameError::IllegalMove {
                player: state.turn,
                detail: format!(
                    "{} is not reachable in one move",
                    next.display(spec.lattice(state.turn))
                ),
            });
        }
        if state.is_final_pass(&next) {
            let winner = if config_satisfies(&state.sys, &state.env, spec) {
                Player::System
            } else {
                Player::Environment
            };
            return Ok(PlayRecord { states, non_pass_moves, winner });
        }
        state = state.after(next);
        if !state.last_was_pass {
            non_pass_moves += 1;
        }
        states.push(state.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector_game::spec::AcceptanceCondition;

    #[test]
    fn random_plays_terminate() {
        let g = GameSpec::new(vec!["a".into(), "b".into()], vec!["c".into()], 2, vec![AcceptanceCondition::new()]).unwrap();
        for seed in 0..20 {
            let mut s = RandomStrategy::new(seed);
            let mut e = RandomStrategy::new(seed + 100);
            let r = play(&g, 2, 2, &mut s, &mut e).unwrap();
            assert!(r.non_pass_moves <= 2 * 2 * 2 + 2 * 2);
            assert_eq!(r.winner, Player::System);
        }
    }

    #[test]
    fn immediate_double_pass() {
        let g = GameSpec::new(vec!["a".into()], vec!["c".into()], 1, vec![]).unwrap();
        let r = play(&g, 1, 1, &mut PassStrategy, &mut PassStrategy).unwrap();
        assert_eq!(r.states.len(), 2);
        assert_eq!(r.non_pass_moves, 0);
        assert_eq!(r.winner, Player::Environment);
    }
}
