//! Lifting an Environment strategy to one extra pebble that sits on a
//! moving anchor location and never affects the outcome.

use rustc_hash::FxHashMap;

use super::config::{config_satisfies, GameState, PlayerConfig};
use super::anchor::{compute_minind, find_anchor_idx};
use super::play::{legal_moves, play, TableStrategy, VectorStrategy};
use super::solve::{solve_with_budget, Budget, SolveError};
use super::spec::{GameError, GameSpec, Location, Player};

#[derive(Debug, Clone)]
pub struct LiftedEnvStrategy<S> {
    inner: S,
    inner_env: PlayerConfig,
    spel: usize,
    k: u32,
}

/// Wraps an Environment strategy for `(ns, ne)` into one for `(ns, ne + 1)`.
pub fn lift_env_strategy<S: VectorStrategy>(
    spec: &GameSpec,
    _ns: u64,
    ne: u64,
    inner: S,
) -> Result<LiftedEnvStrategy<S>, GameError> {
    let minind = compute_minind(spec)?;
    if ne < minind {
        return Err(GameError::BelowMinind { minind, got: ne });
    }
    let k = spec.max_constant();
    let inner_env = PlayerConfig::initial(spec.lattice(Player::Environment), ne)?;
    let spel = find_anchor_idx(spec, &inner_env, 0, k)?;
    Ok(LiftedEnvStrategy { inner, inner_env, spel, k })
}

impl<S> LiftedEnvStrategy<S> {
    /// Location currently holding the extra pebble.
    pub fn marked<'a>(&self, spec: &'a GameSpec) -> &'a Location {
        spec.lattice(Player::Environment).location(self.spel)
    }

    pub fn inner_config(&self) -> &PlayerConfig {
        &self.inner_env
    }

    fn expected_env(&self) -> PlayerConfig {
        self.inner_env.with_extra(self.spel)
    }
}

impl<S: VectorStrategy> VectorStrategy for LiftedEnvStrategy<S> {
    fn choose(&mut self, spec: &GameSpec, state: &GameState) -> Result<PlayerConfig, GameError> {
        if state.turn != Player::Environment || state.env != self.expected_env() {
            return Err(GameError::IllegalMove {
                player: Player::Environment,
                detail: "lifted strategy asked at a state it did not produce".into(),
            });
        }
        let inner_state = GameState {
            sys: state.sys.clone(),
            env: self.inner_env.clone(),
            turn: Player::Environment,
            last_was_pass: state.last_was_pass,
        };
        let next = self.inner.choose(spec, &inner_state)?;
        self.spel = find_anchor_idx(spec, &next, self.spel, self.k)?;
        self.inner_env = next;
        Ok(self.expected_env())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCheck {
    pub minind: u64,
    pub ns: u64,
    pub ne: u64,
    /// Solver verdict at `(ns, ne)`.
    pub base_winner: Player,
    /// Solver verdict at `(ns, ne + 1)`.
    pub lifted_solver_winner: Player,
    /// Lifted strategy wins against every System strategy; `None` when the base is a System win.
    pub exhaustive_env_wins: Option<bool>,
    /// Winner of the lifted strategy against the solver's optimal System play.
    pub vs_optimal: Option<Player>,
    pub states_explored: usize,
}

impl LiftCheck {
    /// The lift did what it promises, or there was nothing to lift.
    pub fn ok(&self) -> bool {
        self.base_winner == Player::System
            || (self.exhaustive_env_wins == Some(true) && self.vs_optimal == Some(Player::Environment))
    }
}

/// Solves `(ns, ne)`; when Environment wins, lifts the solver's Environment
/// strategy and checks it at `(ns, ne + 1)` both exhaustively and against the
/// solver's own optimal System strategy.
pub fn lift_check(spec: &GameSpec, ns: u64, ne: u64, budget: Budget) -> Result<LiftCheck, SolveError> {
    let minind = compute_minind(spec)?;
    if ne < minind {
        return Err(GameError::BelowMinind { minind, got: ne }.into());
    }
    let base = solve_with_budget(spec, ns, ne, budget)?;
    let above = solve_with_budget(spec, ns, ne + 1, budget)?;
    let mut report = LiftCheck {
        minind,
        ns,
        ne,
        base_winner: base.winner,
        lifted_solver_winner: above.winner,
        exhaustive_env_wins: None,
        vs_optimal: None,
        states_explored: 0,
    };
    if base.winner == Player::System {
        return Ok(report);
    }
    let lifted = lift_env_strategy(spec, ns, ne, TableStrategy::new(base.table))?;
    let (wins, explored) = verify_lift_exhaustive(spec, ns, ne + 1, &lifted, budget)?;
    report.exhaustive_env_wins = Some(wins);
    report.states_explored = explored;
    let mut env = lifted;
    let mut sys = TableStrategy::new(above.table);
    report.vs_optimal = Some(play(spec, ns, ne + 1, &mut sys, &mut env)?.winner);
    Ok(report)
}

/// Whether `lifted` wins from the initial `(ns, ne)` state against all System
/// behaviours, plus the number of distinct states visited.
pub fn verify_lift_exhaustive(
    spec: &GameSpec,
    ns: u64,
    ne: u64,
    lifted: &LiftedEnvStrategy<TableStrategy>,
    budget: Budget,
) -> Result<(bool, usize), SolveError> {
    let start = GameState::initial(spec, ns, ne)?;
    let mut memo = FxHashMap::default();
    let wins = env_wins(spec, start, lifted.clone(), &mut memo, budget)?;
    Ok((wins, memo.len()))
}

fn env_wins(
    spec: &GameSpec,
    state: GameState,
    lifted: LiftedEnvStrategy<TableStrategy>,
    memo: &mut FxHashMap<(GameState, usize), bool>,
    budget: Budget,
) -> Result<bool, SolveError> {
    let key = (state, lifted.spel);
    if let Some(&b) = memo.get(&key) {
        return Ok(b);
    }
    if memo.len() >= budget.max_states {
        return Err(SolveError::Budget { what: "lift verification states", limit: budget.max_states });
    }
    let state = &key.0;
    let end = |s: &GameState| !config_satisfies(&s.sys, &s.env, spec);
    let result = match state.turn {
        Player::Environment => {
            let mut next_lift = lifted.clone();
            let next = next_lift.choose(spec, state)?;
            if legal_moves(spec, state)?.binary_search(&next).is_err() {
                return Err(GameError::IllegalMove {
                    player: Player::Environment,
                    detail: "lifted move is not reachable".into(),
                }
                .into());
            }
            if state.is_final_pass(&next) {
                end(state)
            } else {
                env_wins(spec, state.after(next), next_lift, memo, budget)?
            }
        }
        Player::System => {
            let mut all = true;
            for next in legal_moves(spec, state)? {
                let w = if state.is_final_pass(&next) {
                    end(state)
                } else {
                    env_wins(spec, state.after(next), lifted.clone(), memo, budget)?
                };
                if !w {
                    all = false;
                    break;
                }
            }
            all
        }
    };
    memo.insert(key, result);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector_game::spec::{AcceptanceCondition, Constraint};

    #[test]
    fn degenerate_lift_is_identity() {
        let c = AcceptanceCondition::new().with(Player::Environment, Location(vec![]), Constraint::Exactly(1));
        let g = GameSpec::new(vec![], vec![], 0, vec![c]).unwrap();
        let lifted = lift_env_strategy(&g, 0, 1, super::super::play::PassStrategy).unwrap();
        assert_eq!(lifted.marked(&g), &Location(vec![]));
        assert_eq!(lifted.expected_env().total(), 2);
    }

    #[test]
    fn below_minind_rejected() {
        let c = AcceptanceCondition::new().with(Player::Environment, Location(vec![1]), Constraint::AtLeast(1));
        let g = GameSpec::new(vec!["a".into()], vec!["b".into()], 1, vec![c]).unwrap();
        assert!(matches!(
            lift_env_strategy(&g, 0, 1, super::super::play::PassStrategy),
            Err(GameError::BelowMinind { minind: 2, got: 1 })
        ));
    }

    #[test]
    fn lift_on_small_game() {
        // System needs exactly one Environment pebble left at the start.
        let c = AcceptanceCondition::new()
            .with(Player::System, Location(vec![1]), Constraint::AtLeast(1))
            .with(Player::Environment, Location(vec![0]), Constraint::Exactly(1));
        let g = GameSpec::new(vec!["a".into()], vec!["b".into()], 1, vec![c]).unwrap();
        let r = lift_check(&g, 1, 2, Budget::default()).unwrap();
        assert_eq!(r.base_winner, Player::Environment);
        assert!(r.ok(), "{r:?}");
    }
}
