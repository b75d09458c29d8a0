mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use dwsynth::vector_game::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Pebbles = Vec<Vec<u32>>;

/// Plain minimax over pebble lists, independent of the library's dense encoding.
struct Oracle<'a> {
    spec: &'a GameSpec,
    memo: HashMap<(Pebbles, Pebbles, bool, bool), Player>,
}

fn above(l: &[u32], bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &v in l {
        out = out.into_iter().flat_map(|p| (v..=bound).map(move |w| [p.clone(), vec![w]].concat())).collect();
    }
    out
}

impl<'a> Oracle<'a> {
    fn new(spec: &'a GameSpec) -> Self {
        Oracle { spec, memo: HashMap::new() }
    }

    fn moves(&self, ps: &Pebbles) -> BTreeSet<Pebbles> {
        let mut acc: BTreeSet<Pebbles> = [Vec::new()].into();
        for p in ps {
            let targets = above(p, self.spec.bound());
            acc = acc
                .iter()
                .flat_map(|sofar| targets.iter().map(move |t| [sofar.clone(), vec![t.clone()]].concat()))
                .map(|mut v| {
                    v.sort();
                    v
                })
                .collect();
        }
        acc
    }

    fn accepted(&self, sys: &Pebbles, env: &Pebbles) -> bool {
        self.spec.victory().iter().any(|c| {
            c.constraints.iter().all(|((side, loc), k)| {
                let ps = if *side == Player::System { sys } else { env };
                k.holds(ps.iter().filter(|p| **p == loc.0).count() as u32)
            })
        })
    }

    fn value(&mut self, sys: Pebbles, env: Pebbles, sys_turn: bool, last_pass: bool) -> Player {
        let key = (sys.clone(), env.clone(), sys_turn, last_pass);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let me = if sys_turn { Player::System } else { Player::Environment };
        let mine = if sys_turn { &sys } else { &env };
        let mut best = me.other();
        for next in self.moves(mine) {
            let pass = &next == mine;
            let v = if pass && last_pass {
                if self.accepted(&sys, &env) { Player::System } else { Player::Environment }
            } else if sys_turn {
                self.value(next, env.clone(), false, pass)
            } else {
                self.value(sys.clone(), next, true, pass)
            };
            if v == me {
                best = me;
                break;
            }
        }
        self.memo.insert(key, best);
        best
    }

    fn winner(&mut self, ns: usize, ne: usize) -> Player {
        let s = vec![vec![0; self.spec.sys_letters().len()]; ns];
        let e = vec![vec![0; self.spec.env_letters().len()]; ne];
        self.value(s, e, false, false)
    }
}

#[test]
fn small_fixture_matches_oracle() {
    let spec = GameSpec::parse(&common::data("small.vg")).unwrap();
    let mut oracle = Oracle::new(&spec);
    for ns in 0..=3u64 {
        for ne in 0..=3u64 {
            let expect = if ns >= 1 && ne == 0 { Player::System } else { Player::Environment };
            assert_eq!(oracle.winner(ns as usize, ne as usize), expect, "oracle at ({ns},{ne})");
            assert_eq!(solve(&spec, ns, ne).unwrap().winner, expect, "solver at ({ns},{ne})");
        }
    }
}

#[test]
fn fixtures() {
    let all = GameSpec::parse(&common::data("all_default.vg")).unwrap();
    let g = decide_grid(&all, 2, Some(2), Budget::default(), None).unwrap();
    assert!(g.rows.iter().flatten().all(|c| c.winner() == Some(Player::System)));
    let t = GameSpec::parse(&common::data("threshold.vg")).unwrap();
    assert_eq!(compute_minind(&t).unwrap(), 1);
    let g = decide_grid(&t, 1, None, Budget::default(), Some(1)).unwrap();
    let cells: Vec<Vec<&str>> = g.rows.iter().map(|r| r.iter().map(Cell::symbol).collect()).collect();
    assert_eq!(cells, [["E", "E"], ["S", "S"]]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn solver_matches_oracle(seed in any::<u64>(), ns in 0u64..=2, ne in 0u64..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = common::random_small_game(&mut rng);
        let got = solve(&spec, ns, ne).unwrap().winner;
        prop_assert_eq!(got, Oracle::new(&spec).winner(ns as usize, ne as usize), "{}", spec.to_text());
    }

    #[test]
    fn plays_terminate_and_pass_out(seed in any::<u64>(), ns in 0u64..=3, ne in 0u64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = common::random_small_game(&mut rng);
        let d = spec.sys_letters().len().max(spec.env_letters().len()) as u64;
        let rec = play(&spec, ns, ne, &mut RandomStrategy::new(seed), &mut RandomStrategy::new(!seed)).unwrap();
        prop_assert!(rec.non_pass_moves as u64 <= (ns + ne) * d * u64::from(spec.bound()));
        let last = rec.final_state();
        let before = &rec.states[rec.states.len() - 2.min(rec.states.len())];
        prop_assert!(last.last_was_pass);
        prop_assert_eq!((&before.sys, &before.env), (&last.sys, &last.env));
        let pot = |s: &GameState| {
            s.sys.potential(spec.lattice(Player::System)) + s.env.potential(spec.lattice(Player::Environment))
        };
        for w in rec.states.windows(2) {
            prop_assert!(pot(&w[1]) < pot(&w[0]) || w[1].last_was_pass);
        }
        let accepted = config_satisfies(&last.sys, &last.env, &spec);
        prop_assert_eq!(rec.winner == Player::System, accepted);
    }
}

/// Environment configuration with `n` pebbles scattered at random.
fn scatter<R: Rng>(rng: &mut R, spec: &GameSpec, n: u64) -> PlayerConfig {
    let lat = spec.lattice(Player::Environment);
    let locs: Vec<Location> = (0..n).map(|_| lat.location(rng.gen_range(0..lat.size())).clone()).collect();
    PlayerConfig::from_locations(lat, locs.iter().map(|l| (l, 1))).unwrap()
}

fn env_game<R: Rng>(rng: &mut R) -> (GameSpec, u32) {
    let de = rng.gen_range(1..=2);
    let bound = rng.gen_range(0..=2);
    let k = rng.gen_range(1..=2);
    let c = AcceptanceCondition::new().with(Player::Environment, Location(vec![0; de]), Constraint::AtLeast(k));
    (GameSpec::new(vec!["s".into()], common::letters("e", de), bound, vec![c]).unwrap(), k)
}

#[test]
fn p_propagates_to_a_successor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let (spec, k) = env_game(&mut rng);
        let n = rng.gen_range(0..=40);
        let env = scatter(&mut rng, &spec, n);
        let lat = spec.lattice(Player::Environment);
        for (idx, l) in lat.locations().iter().enumerate() {
            if holds_p(&env, l, k, &spec).unwrap() && env.count_at(idx) < k {
                let next = lat.successors(idx).iter().any(|&s| holds_p(&env, lat.location(s), k, &spec).unwrap());
                assert!(next, "P at {l} without count or successor in {}", env.display(lat));
            }
        }
    }
}

/// Pebbles at locations reachable from `l`, counted directly.
fn brute_num_after(env: &PlayerConfig, l: &Location, spec: &GameSpec) -> u64 {
    env.entries(spec.lattice(Player::Environment))
        .filter(|(m, _)| reachable(l, m).unwrap())
        .map(|(_, c)| u64::from(c))
        .sum()
}

#[test]
fn anchors_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 500 {
        let (spec, k) = env_game(&mut rng);
        let minind = compute_minind(&spec).unwrap();
        let extra = rng.gen_range(0..=4);
        let env = scatter(&mut rng, &spec, minind + extra);
        let init = Location::initial(spec.env_letters().len());
        if !holds_p(&env, &init, k, &spec).unwrap() {
            assert!(find_anchor(&env, k, &spec).is_err());
            continue;
        }
        checked += 1;
        let a = find_anchor(&env, k, &spec).unwrap();
        let lat = spec.lattice(Player::Environment);
        assert!(env.count(lat, &a).unwrap() >= k);
        assert!(holds_p(&env, &a, k, &spec).unwrap());
        assert_eq!(num_after(&env, &a, &spec).unwrap(), brute_num_after(&env, &a, &spec));
        assert!(reachable(&init, &a).unwrap());
    }
}

#[test]
fn all_pebbles_at_init_anchor_there() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let (spec, k) = env_game(&mut rng);
        let minind = compute_minind(&spec).unwrap();
        let env = PlayerConfig::initial(spec.lattice(Player::Environment), minind).unwrap();
        assert_eq!(find_anchor(&env, k, &spec).unwrap(), Location::initial(spec.env_letters().len()));
    }
}

#[test]
fn monotone_in_environment_pebbles_above_minind() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut env_wins = BTreeMap::new();
    for _ in 0..60 {
        let spec = common::random_small_game(&mut rng);
        let minind = compute_minind(&spec).unwrap();
        for ns in 0..=2 {
            for ne in minind..minind + 3 {
                let here = solve(&spec, ns, ne).unwrap().winner;
                let next = solve(&spec, ns, ne + 1).unwrap().winner;
                *env_wins.entry(here).or_insert(0) += 1;
                assert!(!(here == Player::Environment && next == Player::System), "{}", spec.to_text());
            }
        }
    }
    assert!(env_wins.len() == 2, "suite should contain wins for both players: {env_wins:?}");
}

#[test]
fn lifted_strategy_never_loses_where_base_wins() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut lifted = 0;
    for _ in 0..80 {
        let spec = common::random_small_game(&mut rng);
        let minind = compute_minind(&spec).unwrap();
        for ns in 0..=1 {
            let r = lift_check(&spec, ns, minind, Budget::default()).unwrap();
            assert!(r.ok(), "{r:?}\n{}", spec.to_text());
            if r.base_winner == Player::Environment {
                lifted += 1;
                assert_eq!(r.lifted_solver_winner, Player::Environment);
            }
        }
    }
    assert!(lifted > 0);
}

#[test]
fn game_text_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let spec = common::random_small_game(&mut rng);
        let back = GameSpec::parse(&spec.to_text()).unwrap();
        assert_eq!(back.to_text(), spec.to_text());
    }
}
