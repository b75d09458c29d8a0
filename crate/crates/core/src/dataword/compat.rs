use crate::arena::SystemStrategy;
use crate::logic::{Owner, Signature};

use super::word::DataWord;

/// Every System position is what the strategy asked for on the strict prefix
/// before it, and the strategy has nothing left to play at the end.
pub fn check_compatibility(exec: &DataWord, strat: &dyn SystemStrategy, sig: &Signature) -> bool {
    let ps = &exec.positions;
    for (i, p) in ps.iter().enumerate() {
        if sig.owner(&p.action) == Some(Owner::System) && strat.next_move(&ps[..i]).as_ref() != Some(p) {
            return false;
        }
    }
    strat.next_move(ps).is_none()
}

/// Finite stand-in for fairness: no run of `window` consecutive Environment
/// positions during each of which the strategy had a move pending.
pub fn check_fairness_window(exec: &DataWord, strat: &dyn SystemStrategy, sig: &Signature, window: usize) -> bool {
    assert!(window >= 1, "fairness window must be at least 1");
    let ps = &exec.positions;
    let mut run = 0;
    for (i, p) in ps.iter().enumerate() {
        let delayed = sig.owner(&p.action) != Some(Owner::System) && strat.next_move(&ps[..i]).is_some();
        run = if delayed { run + 1 } else { 0 };
        if run >= window {
            return false;
        }
    }
    true
}
