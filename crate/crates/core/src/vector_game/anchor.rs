//! Counting machinery behind pebble monotonicity for Environment.

use super::config::PlayerConfig;
use super::spec::{GameError, GameSpec, Location, Player};

/// `Σ (B − ν_i)`: how many more times a pebble at `l` can move.
pub fn potential(l: &Location, spec: &GameSpec) -> u32 {
    l.0.iter().map(|&v| spec.bound().saturating_sub(v)).sum()
}

/// `K·(d+1)^(d·B)` with `d` the number of Environment letters.
pub fn compute_minind(spec: &GameSpec) -> Result<u64, GameError> {
    let d = spec.env_letters().len() as u64;
    let exp = d.checked_mul(u64::from(spec.bound())).ok_or(GameError::Overflow("minind exponent"))?;
    let k = u64::from(spec.max_constant());
    if k == 0 {
        return Ok(0);
    }
    let exp = u32::try_from(exp).map_err(|_| GameError::Overflow("minind exponent"))?;
    (d + 1)
        .checked_pow(exp)
        .and_then(|p| p.checked_mul(k))
        .ok_or(GameError::Overflow("minind"))
}

/// `K·(d+1)^pot`, saturating.
fn threshold(k: u32, d: usize, pot: u32) -> u128 {
    (d as u128 + 1).checked_pow(pot).map_or(u128::MAX, |p| p.saturating_mul(u128::from(k)))
}

pub(crate) fn num_after_idx(spec: &GameSpec, env: &PlayerConfig, idx: usize) -> u64 {
    let lat = spec.lattice(Player::Environment);
    lat.up_set(idx).iter().map(|&j| u64::from(env.count_at(j))).sum()
}

pub(crate) fn holds_p_idx(spec: &GameSpec, env: &PlayerConfig, idx: usize, k: u32) -> bool {
    let lat = spec.lattice(Player::Environment);
    u128::from(num_after_idx(spec, env, idx)) >= threshold(k, lat.dim(), lat.potential(idx))
}

/// Environment pebbles at locations reachable from `l`.
pub fn num_after(env: &PlayerConfig, l: &Location, spec: &GameSpec) -> Result<u64, GameError> {
    let idx = spec.lattice(Player::Environment).index(l)?;
    Ok(num_after_idx(spec, env, idx))
}

/// `num_after(l) ≥ K·(d+1)^pot(l)`.
pub fn holds_p(env: &PlayerConfig, l: &Location, k: u32, spec: &GameSpec) -> Result<bool, GameError> {
    let idx = spec.lattice(Player::Environment).index(l)?;
    Ok(holds_p_idx(spec, env, idx, k))
}

/// Walks up from `from` through successors satisfying P until the local
/// count reaches `k`.
pub(crate) fn find_anchor_idx(spec: &GameSpec, env: &PlayerConfig, from: usize, k: u32) -> Result<usize, GameError> {
    let lat = spec.lattice(Player::Environment);
    let lost = |idx: usize| GameError::AnchorPrecondition(lat.location(idx).to_string());
    if !holds_p_idx(spec, env, from, k) {
        return Err(lost(from));
    }
    let mut cur = from;
    while env.count_at(cur) < k {
        cur = *lat
            .successors(cur)
            .iter()
            .find(|&&s| holds_p_idx(spec, env, s, k))
            .ok_or_else(|| lost(cur))?;
    }
    Ok(cur)
}

/// A location with P and at least `k` pebbles, searched from the initial location.
pub fn find_anchor(env: &PlayerConfig, k: u32, spec: &GameSpec) -> Result<Location, GameError> {
    find_anchor_from(env, &Location::initial(spec.env_letters().len()), k, spec)
}

pub fn find_anchor_from(env: &PlayerConfig, from: &Location, k: u32, spec: &GameSpec) -> Result<Location, GameError> {
    let lat = spec.lattice(Player::Environment);
    let idx = find_anchor_idx(spec, env, lat.index(from)?, k)?;
    Ok(lat.location(idx).clone())
}
