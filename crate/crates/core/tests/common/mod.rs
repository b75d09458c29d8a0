#![allow(dead_code)]

use std::path::PathBuf;

use dwsynth::dataword::{DataWord, Position, ProcessPools};
use dwsynth::logic::*;
use dwsynth::minsky::{MinskyMachine, Transition, TransitionKind};
use dwsynth::vector_game::{AcceptanceCondition, Constraint, GameSpec, Location, Player};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn letters(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_location<R: Rng>(rng: &mut R, dim: usize, bound: u32) -> Location {
    Location((0..dim).map(|_| rng.gen_range(0..=bound)).collect())
}

/// `|Σ_S| ≤ 2`, `|Σ_E| ≤ 2`, `B ≤ 1`, constants `≤ 1`, one or two acceptance conditions.
pub fn random_small_game<R: Rng>(rng: &mut R) -> GameSpec {
    let ds = rng.gen_range(1..=2);
    let de = rng.gen_range(1..=2);
    let bound = rng.gen_range(0..=1);
    let conds = (0..rng.gen_range(1..=2))
        .map(|_| {
            let mut c = AcceptanceCondition::new();
            for _ in 0..rng.gen_range(1..=3) {
                let (side, dim) = if rng.gen_bool(0.5) { (Player::System, ds) } else { (Player::Environment, de) };
                let n = rng.gen_range(0..=1);
                let k = if rng.gen_bool(0.5) { Constraint::Exactly(n) } else { Constraint::AtLeast(n) };
                c.constraints.insert((side, random_location(rng, dim, bound)), k);
            }
            c
        })
        .collect();
    GameSpec::new(letters("s", ds), letters("e", de), bound, conds).expect("generated game is valid")
}

pub fn test_signature() -> Signature {
    Signature::new(["a", "b"], ["c"]).unwrap()
}

pub fn test_pools() -> ProcessPools {
    ProcessPools::new(["0", "1"], ["e"], ["m"]).unwrap()
}

const VARS: [&str; 3] = ["x", "y", "z"];

/// Random formula of depth at most `depth` over the test signature.
pub fn random_formula<R: Rng>(rng: &mut R, depth: u32) -> Formula {
    let v = |rng: &mut R| VARS.choose(rng).unwrap().to_string();
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..9) {
            0 => action(*["a", "b", "c"].choose(rng).unwrap(), v(rng)),
            1 => eq(v(rng), v(rng)),
            2 => lt(v(rng), v(rng)),
            3 => succ(v(rng), v(rng)),
            4 => sim(v(rng), v(rng)),
            5 => proc(*[Pool::Sys, Pool::Env, Pool::Mixed].choose(rng).unwrap(), v(rng)),
            6 => Formula::True,
            7 => Formula::False,
            _ => action("a", v(rng)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 => not(random_formula(rng, d)),
        1 => and(random_formula(rng, d), random_formula(rng, d)),
        2 => or(random_formula(rng, d), random_formula(rng, d)),
        3 => implies(random_formula(rng, d), random_formula(rng, d)),
        4 => exists(v(rng), random_formula(rng, d)),
        _ => forall(v(rng), random_formula(rng, d)),
    }
}

/// Closes `f` existentially over its free variables.
pub fn close(f: Formula) -> Formula {
    f.free_vars().into_iter().fold(f, |acc, v| exists(v, acc))
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> DataWord {
    (0..rng.gen_range(0..=max_len))
        .map(|_| {
            if rng.gen_bool(0.6) {
                Position::new(*["a", "b"].choose(rng).unwrap(), *["0", "1", "m"].choose(rng).unwrap())
            } else {
                Position::new("c", *["e", "m"].choose(rng).unwrap())
            }
        })
        .collect()
}

/// Machine with `2..=5` states and `1..=6` transitions of random kinds.
pub fn random_machine<R: Rng>(rng: &mut R) -> MinskyMachine {
    let n = rng.gen_range(2..=5);
    let states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let transitions = (0..rng.gen_range(1..=6))
        .map(|i| {
            let c = rng.gen_range(0..=1);
            let kind = match rng.gen_range(0..3) {
                0 => TransitionKind::Inc(c),
                1 => TransitionKind::Dec(c),
                _ => TransitionKind::Zero(c),
            };
            let src = states.choose(rng).unwrap();
            let dst = states.choose(rng).unwrap();
            Transition::new(&format!("r{i}"), src, dst, kind)
        })
        .collect();
    MinskyMachine::new(states.clone(), &states[0], &states[n - 1], transitions).expect("generated machine is valid")
}
