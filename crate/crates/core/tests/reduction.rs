mod common;

use dwsynth::arena::*;
use dwsynth::dataword::*;
use dwsynth::logic::{Formula, Signature};
use dwsynth::minsky::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn example() -> (MinskyMachine, Run) {
    let m = MinskyMachine::example();
    let r = run(&m, &["t0", "t0", "t1", "t2", "t3"]).unwrap();
    (m, r)
}

fn word(text: &str) -> DataWord {
    text.split_whitespace()
        .map(|t| {
            let (a, p) = t.split_once('@').unwrap();
            Position::new(a, p)
        })
        .collect()
}

fn holds(f: &Formula, w: &DataWord, n_sys: usize, sig: &Signature) -> bool {
    let pools = ProcessPools::partitioned(n_sys, &[ENV_PROCESS]);
    evaluate_closed(f, &WordStructure::new(w, &pools, sig).unwrap()).unwrap()
}

fn honest_trace(m: &MinskyMachine, r: &Run) -> (ScriptedSystem, Trace) {
    let s = strategy_from_run(m, r).unwrap();
    let pools = ProcessPools::partitioned(s.processes(), &[ENV_PROCESS]);
    let t = simulate(&s, &compliant_env_policy(m), &pools, &reduction_signature(m), ScheduleConfig::for_run_len(r.len()));
    (s, t)
}

/// Halting runs of random machines, with the example run first.
fn run_suite() -> Vec<(MinskyMachine, Run)> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut out = vec![example()];
    while out.len() < 15 {
        let m = common::random_machine(&mut rng);
        if let Some(r) = bounded_halting_search(&m, 12) {
            out.push((m, r));
        }
    }
    out
}

#[test]
fn compliant_play_is_the_example_word() {
    let (m, r) = example();
    let (_, t) = honest_trace(&m, &r);
    let (_, fixture) = DataWord::parse_file(&common::data("example_word.dw")).unwrap();
    assert_eq!(t.word, fixture);
    assert_eq!(t.stop, StopReason::BothPassed);
}

#[test]
fn counters_are_open_inc_processes() {
    for (m, r) in run_suite() {
        let (_, t) = honest_trace(&m, &r);
        let mut step = 0;
        for (k, p) in t.word.positions.iter().enumerate() {
            if p.action != "oks" || k == 0 {
                continue;
            }
            step += 1;
            let prefix = &t.word.positions[..k];
            for i in 0..2 {
                let open = prefix
                    .iter()
                    .filter(|q| q.action == format!("inc{i}"))
                    .filter(|q| !prefix.iter().any(|d| d.action == format!("dec{i}") && d.process == q.process))
                    .count() as u64;
                assert_eq!(open, r.configs[step].counters[i], "{} after step {step}", m.to_text());
            }
        }
        assert_eq!(step, r.len());
    }
}

#[test]
fn honest_plays_satisfy_and_never_trigger_koe() {
    for (m, r) in run_suite() {
        let (s, t) = honest_trace(&m, &r);
        let sig = reduction_signature(&m);
        assert!(!t.word.positions.iter().any(|p| p.action == "koe"), "{}", m.to_text());
        assert!(holds(&compile_to_fo2_ord(&m), &t.word, s.processes(), &sig), "{}", m.to_text());
        let c = compliant_env_policy(&m);
        for k in 0..=t.word.len() {
            assert!(!c.cheat_detected(&t.word.positions[..k]), "prefix {k} of {}", t.word);
        }
        assert_eq!(s.processes(), required_processes(&m, &r));
    }
}

#[test]
fn detectors_fire_exactly_on_seeded_cheats() {
    let (m, r) = example();
    let f = compile_with(&m, CompileOptions::default());
    let sig = reduction_signature(&m);
    let (honest, t) = honest_trace(&m, &r);
    for d in Detector::ALL {
        for k in 0..=t.word.len() {
            let prefix: DataWord = t.word.positions[..k].iter().cloned().collect();
            assert!(!holds(&f.detector_closed(d), &prefix, honest.processes(), &sig), "{d} on honest prefix {k}");
        }
    }
    let compliant = compliant_env_policy(&m);
    for cheat in SystemCheat::ALL {
        let Some(expected) = cheat.detector() else { continue };
        let s = cheat_strategy(&m, &r, cheat).unwrap();
        let pools = ProcessPools::partitioned(s.processes(), &[ENV_PROCESS]);
        let t = simulate(&s, &compliant, &pools, &sig, ScheduleConfig::for_run_len(r.len() + 1));
        let koe = t.word.positions.iter().position(|p| p.action == "koe").expect("koe played");
        let before: DataWord = t.word.positions[..koe].iter().cloned().collect();
        assert!(holds(&f.detector_closed(expected), &before, s.processes(), &sig), "{cheat} not caught by {expected}");
        assert!(!holds(&f.phi, &t.word, s.processes(), &sig), "{cheat}");
    }
}

#[test]
fn environment_cheats_justify_kos() {
    let (m, _) = example();
    let f = compile_with(&m, CompileOptions::default());
    let sig = reduction_signature(&m);
    let multi = word("oks@0 oke@e oke@e");
    let early = word("oks@0 oke@e i@0 oke@e");
    let fine = word("oks@0 oke@e i@0 t0@0 inc0@0 oks@0 oke@e");
    assert!(holds(&f.kos, &multi, 2, &sig));
    assert!(holds(&f.kos, &early, 2, &sig));
    assert!(!holds(&f.kos, &fine, 2, &sig));
    for w in [multi, early] {
        let mut w = w;
        w.push(Position::new("kos", "0"));
        assert!(holds(&f.phi, &w, 2, &sig), "{w}");
    }
}

#[test]
fn unjustified_kos_loses() {
    let (m, _) = example();
    let sig = reduction_signature(&m);
    let w = word("oks@0 oke@e kos@0");
    let intent = compile_with(&m, CompileOptions::default());
    assert!(!holds(&intent.phi, &w, 2, &sig));
    assert!(!holds(&intent.kos, &w, 2, &sig));
    // the verbatim formula accepts any oke after the last oks as a misplay
    let literal = compile_with(&m, CompileOptions { literal: true });
    assert!(holds(&literal.kos, &w, 2, &sig));
}

#[test]
fn required_process_counts() {
    let m = MinskyMachine::parse("states i h\ninit i\nhalt h\nt0: i -> i inc c1\nt1: i -> h zero c0\n").unwrap();
    let r = run(&m, &["t0", "t0", "t0", "t1"]).unwrap();
    assert_eq!(required_processes(&m, &r), 3);
    let s = strategy_from_run(&m, &r).unwrap();
    assert_eq!(s.processes(), 3);
    let none = run(&m, &["t1"]).unwrap();
    assert_eq!(required_processes(&m, &none), 1);
}

#[test]
fn machine_text_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..50 {
        let m = common::random_machine(&mut rng);
        let back = MinskyMachine::parse(&m.to_text()).unwrap();
        assert_eq!(back, m);
    }
}

#[test]
fn blocker_and_double_oke_outcomes() {
    let (m, r) = example();
    let s = strategy_from_run(&m, &r).unwrap();
    let sig = reduction_signature(&m);
    let pools = ProcessPools::partitioned(2, &[ENV_PROCESS]);
    let f = compile_with(&m, CompileOptions::default());
    let sched = ScheduleConfig::for_run_len(r.len());
    let t = simulate(&s, &Blocker, &pools, &sig, sched);
    assert_eq!(t.word, word("oks@0"));
    assert!(holds(&f.block_e, &t.word, 2, &sig) && holds(&f.phi, &t.word, 2, &sig));
    let t = simulate(&s, &Scripted::parse(ENV_PROCESS, "-,oke,oke"), &pools, &sig, sched);
    assert_eq!(t.word, word("oks@0 oke@e oke@e kos@0"));
    assert!(holds(&f.phi, &t.word, 2, &sig));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simulations_are_compatible_fair_and_deterministic(seed in any::<u64>(), window in 1usize..10) {
        let (m, r) = example();
        let s = strategy_from_run(&m, &r).unwrap();
        let sig = reduction_signature(&m);
        let pools = ProcessPools::partitioned(2, &[ENV_PROCESS]);
        let sched = ScheduleConfig::new(200, window);
        let env = RandomEnv::new(seed);
        let t = simulate(&s, &env, &pools, &sig, sched);
        prop_assert!(t.violations.is_empty());
        prop_assert!(check_compatibility(&t.word, &s, &sig));
        prop_assert!(check_fairness_window(&t.word, &s, &sig, window));
        prop_assert_eq!(&simulate(&s, &RandomEnv::new(seed), &pools, &sig, sched), &t);
        prop_assert!(holds(&compile_to_fo2_ord(&m), &t.word, 2, &sig), "{}", t.word);
    }

    #[test]
    fn compiled_specs_use_two_variables(seed in any::<u64>(), literal in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_machine(&mut rng);
        let f = compile_with(&m, CompileOptions { literal });
        let p = dwsynth::logic::classify_fragment(&f.phi);
        prop_assert!(p.variables.iter().all(|v| v == "x" || v == "y"));
        prop_assert!(!p.uses_succ);
    }
}
