//! Compiles a two-counter machine into a two-variable formula over
//! `{~, <, =}` that System can satisfy iff the machine has a halting run.
//! Subformulas with a free `x` refer to the last `oke` (or `oks`) position.

use std::fmt;

use crate::logic::{and, conj, disj, eq, exists, forall, lt, not, or, sim, Formula, Signature};

use super::machine::{MinskyMachine, TransitionKind};

pub const SYS_FIXED: [&str; 7] = ["inc0", "dec0", "inc1", "dec1", "noop", "oks", "kos"];
pub const ENV_LETTERS: [&str; 2] = ["oke", "koe"];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompileOptions {
    /// Use the verbatim variants of formkos, formbadtarget and formbadzerotest.
    pub literal: bool,
}

/// Every named piece of the reduction formula, plus the assembled whole.
#[derive(Debug, Clone)]
pub struct ReductionFormulas {
    pub signature: Signature,
    pub kos: Formula,
    pub koe: Formula,
    pub bad_seq: Formula,
    pub bad_target: Formula,
    pub bad_source: Formula,
    pub bad_upkeep: Formula,
    pub bad_zero_test: Formula,
    pub prefix_e: Formula,
    pub prefix_s: Formula,
    pub block_e: Formula,
    pub block_s: Formula,
    pub play_after_ko_e: Formula,
    pub play_after_ko_s: Formula,
    pub phi: Formula,
}

/// The five ways System can cheat after Environment's last acknowledgement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detector {
    BadSeq,
    BadTarget,
    BadSource,
    BadUpkeep,
    BadZeroTest,
}

impl Detector {
    pub const ALL: [Detector; 5] =
        [Detector::BadSeq, Detector::BadTarget, Detector::BadSource, Detector::BadUpkeep, Detector::BadZeroTest];
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Detector::BadSeq => "formbadseq",
            Detector::BadTarget => "formbadtarget",
            Detector::BadSource => "formbadsource",
            Detector::BadUpkeep => "formbadupkeep",
            Detector::BadZeroTest => "formbadzerotest",
        })
    }
}

impl ReductionFormulas {
    pub fn detector(&self, d: Detector) -> &Formula {
        match d {
            Detector::BadSeq => &self.bad_seq,
            Detector::BadTarget => &self.bad_target,
            Detector::BadSource => &self.bad_source,
            Detector::BadUpkeep => &self.bad_upkeep,
            Detector::BadZeroTest => &self.bad_zero_test,
        }
    }

    /// Closed formula: `d` holds relative to the last `oke`.
    pub fn detector_closed(&self, d: Detector) -> Formula {
        exists("x", conj([a("oke", "x"), last_of("oke", "x"), self.detector(d).clone()]))
    }
}

/// System letters in the order the reduction uses them.
pub fn system_letters(m: &MinskyMachine) -> Vec<String> {
    SYS_FIXED
        .iter()
        .map(|s| s.to_string())
        .chain(m.states().iter().cloned())
        .chain(m.transitions().iter().map(|t| t.name.clone()))
        .collect()
}

pub fn reduction_signature(m: &MinskyMachine) -> Signature {
    Signature::new(system_letters(m), ENV_LETTERS).expect("machine names avoid reduction letters")
}

pub fn compile_to_fo2_ord(m: &MinskyMachine) -> Formula {
    compile_with(m, CompileOptions::default()).phi
}

fn other(v: &str) -> &'static str {
    if v == "x" {
        "y"
    } else {
        "x"
    }
}

fn a(letter: &str, v: &str) -> Formula {
    crate::logic::action(letter, v)
}

/// `∃b > r. body`
fn after(r: &str, b: &'static str, body: Formula) -> Formula {
    exists(b, and(lt(r, b), body))
}

/// `∃b < r. body`
fn before(r: &str, b: &'static str, body: Formula) -> Formula {
    exists(b, and(lt(b, r), body))
}

/// `∀y. v < y → ¬letter(y)`, with `y` the other variable.
fn last_of(letter: &str, v: &str) -> Formula {
    let o = other(v);
    forall(o, or(not(lt(v, o)), not(a(letter, o))))
}

fn first(v: &str) -> Formula {
    not(exists(other(v), lt(other(v), v)))
}

fn last(v: &str) -> Formula {
    not(exists(other(v), lt(v, other(v))))
}

/// Has a predecessor, and every predecessor is the first position.
fn second(v: &str) -> Formula {
    let o = other(v);
    and(exists(o, lt(o, v)), forall(o, or(not(lt(o, v)), not(exists(v, lt(v, o))))))
}

/// `P(t)` for a defined position `t`: `∃x. t(x) ∧ P(x)`.
fn at(pos: fn(&str) -> Formula, p: impl Fn(&str) -> Formula) -> Formula {
    exists("x", and(pos("x"), p("x")))
}

struct Builder<'m> {
    m: &'m MinskyMachine,
    literal: bool,
}

impl Builder<'_> {
    fn letters<'a>(&self, names: impl IntoIterator<Item = &'a str>, v: &str) -> Formula {
        disj(names.into_iter().map(|n| a(n, v)))
    }

    fn is_state(&self, v: &str) -> Formula {
        self.letters(self.m.states().iter().map(String::as_str), v)
    }

    fn trans_where(&self, pred: impl Fn(&super::machine::Transition) -> bool, v: &str) -> Formula {
        self.letters(self.m.transitions().iter().filter(|t| pred(t)).map(|t| t.name.as_str()), v)
    }

    fn is_trans(&self, v: &str) -> Formula {
        self.trans_where(|_| true, v)
    }

    fn is_upkeep(&self, v: &str) -> Formula {
        self.letters(["noop", "inc0", "dec0", "inc1", "dec1"], v)
    }

    fn is_sys(&self, v: &str) -> Formula {
        let all = system_letters(self.m);
        self.letters(all.iter().map(String::as_str), v)
    }

    fn is_env(&self, v: &str) -> Formula {
        self.letters(ENV_LETTERS, v)
    }

    fn kos(&self) -> Formula {
        let second_disjunct = if self.literal {
            not(after("x", "y", a("oks", "y")))
        } else {
            not(before("y", "x", a("oks", "x")))
        };
        let early = if self.literal { after("y", "x", a("oke", "y")) } else { after("y", "x", a("oke", "x")) };
        exists(
            "x",
            conj([a("oks", "x"), last_of("oks", "x"), after("x", "y", conj([a("oke", "y"), or(early, second_disjunct)]))]),
        )
    }

    fn bad_seq(&self) -> Formula {
        let out_of_order = after(
            "x",
            "y",
            disj([
                and(self.is_state("y"), after("y", "x", self.is_state("x"))),
                and(self.is_trans("y"), after("y", "x", or(self.is_state("x"), self.is_trans("x")))),
                and(
                    self.is_upkeep("y"),
                    after("y", "x", disj([self.is_state("x"), self.is_trans("x"), self.is_upkeep("x")])),
                ),
                and(a("oks", "y"), after("y", "x", self.is_sys("x"))),
            ]),
        );
        disj([
            out_of_order,
            and(after("x", "y", self.is_sys("y")), not(after("x", "y", self.is_state("y")))),
            and(
                after("x", "y", or(self.is_upkeep("y"), a("oks", "y"))),
                not(after("x", "y", self.is_trans("y"))),
            ),
            and(after("x", "y", a("oks", "y")), not(after("x", "y", self.is_upkeep("y")))),
        ])
    }

    fn bad_target(&self) -> Formula {
        let no_trans_since = not(after("x", "y", self.is_trans("y")));
        let no_later_trans = forall("y", or(not(lt("x", "y")), not(self.is_trans("y"))));
        let per_state = self.m.states().iter().map(|q| {
            let wrong = self.trans_where(|t| &t.target != q, "x");
            let last_trans = if self.literal {
                and(exists("x", no_later_trans.clone()), wrong)
            } else {
                exists("x", and(no_later_trans.clone(), wrong))
            };
            and(after("x", "y", a(q, "y")), last_trans)
        });
        let non_initial = self.m.states().iter().filter(|q| *q != self.m.init()).map(|q| exists("y", a(q, "y")));
        or(
            and(no_trans_since, disj(per_state)),
            and(not(exists("y", self.is_trans("y"))), disj(non_initial)),
        )
    }

    fn bad_source(&self) -> Formula {
        disj(self.m.states().iter().flat_map(|q| {
            self.m
                .transitions()
                .iter()
                .filter(move |t| &t.source != q)
                .map(move |t| and(after("x", "y", a(q, "y")), after("x", "y", a(&t.name, "y"))))
        }))
    }

    fn bad_upkeep(&self) -> Formula {
        disj((0..2).map(|i| {
            let inc = format!("inc{i}");
            let dec = format!("dec{i}");
            let kind = |k: fn(usize) -> TransitionKind| self.trans_where(move |t| t.kind == k(i), "y");
            let mismatch = |k: fn(usize) -> TransitionKind, letter: &str| {
                and(after("x", "y", kind(k)), after("x", "y", and(self.is_upkeep("y"), not(a(letter, "y")))))
            };
            let same_proc_before = |letter: &str| before("y", "x", and(sim("x", "y"), a(letter, "x")));
            disj([
                mismatch(TransitionKind::Inc, &inc),
                mismatch(TransitionKind::Dec, &dec),
                mismatch(TransitionKind::Zero, "noop"),
                after("x", "y", and(a(&inc, "y"), same_proc_before(&inc))),
                after("x", "y", and(a(&dec, "y"), same_proc_before(&dec))),
                after("x", "y", and(a(&dec, "y"), not(same_proc_before(&inc)))),
            ])
        }))
    }

    fn bad_zero_test(&self) -> Formula {
        disj((0..2).map(|i| {
            let inc = format!("inc{i}");
            let dec = format!("dec{i}");
            let dec_at = if self.literal { "x" } else { "y" };
            let zero = self.trans_where(|t| t.kind == TransitionKind::Zero(i), "y");
            and(
                after("x", "y", zero),
                exists("x", and(a(&inc, "x"), not(exists("y", and(sim("y", "x"), a(&dec, dec_at)))))),
            )
        }))
    }

    /// `x ≠ last`, spelled with `=` so that `x` stays free.
    fn not_last(&self) -> Formula {
        not(exists("y", and(eq("y", "x"), last("y"))))
    }

    fn play_after_ko(&self, side_last: Formula) -> Formula {
        and(side_last, exists("x", and(self.not_last(), or(a("koe", "x"), a("kos", "x")))))
    }

    fn build(&self) -> ReductionFormulas {
        let kos = self.kos();
        let bad_seq = self.bad_seq();
        let bad_target = self.bad_target();
        let bad_source = self.bad_source();
        let bad_upkeep = self.bad_upkeep();
        let bad_zero_test = self.bad_zero_test();
        let koe = exists(
            "x",
            conj([
                a("oke", "x"),
                last_of("oke", "x"),
                disj([bad_seq.clone(), bad_target.clone(), bad_source.clone(), bad_upkeep.clone(), bad_zero_test.clone()]),
            ]),
        );
        let halt = self.m.halt();
        let prefix_e = or(
            at(first, |v| self.is_env(v)),
            and(at(second, |v| self.is_env(v)), not(at(second, |v| a("oke", v)))),
        );
        let prefix_s = or(
            and(at(first, |v| self.is_sys(v)), not(at(first, |v| a("oks", v)))),
            at(second, |v| self.is_sys(v)),
        );
        let block_e = at(last, |v| a("oks", v));
        let block_s = disj([
            not(exists("x", Formula::True)),
            at(last, |v| a("koe", v)),
            and(at(last, |v| self.is_state(v)), not(at(last, |v| a(halt, v)))),
            at(last, |v| self.is_trans(v)),
            at(last, |v| self.is_upkeep(v)),
        ]);
        let play_after_ko_e = self.play_after_ko(at(last, |v| self.is_env(v)));
        let play_after_ko_s = self.play_after_ko(at(last, |v| self.is_sys(v)));
        let system_clean = conj([
            not(prefix_s.clone()),
            not(block_s.clone()),
            not(play_after_ko_s.clone()),
            not(exists("x", and(a("koe", "x"), koe.clone()))),
            at(last, |v| a(halt, v)),
        ]);
        let phi = disj([
            prefix_e.clone(),
            block_e.clone(),
            play_after_ko_e.clone(),
            exists("x", and(a("kos", "x"), kos.clone())),
            system_clean,
        ]);
        ReductionFormulas {
            signature: reduction_signature(self.m),
            kos,
            koe,
            bad_seq,
            bad_target,
            bad_source,
            bad_upkeep,
            bad_zero_test,
            prefix_e,
            prefix_s,
            block_e,
            block_s,
            play_after_ko_e,
            play_after_ko_s,
            phi,
        }
    }
}

pub fn compile_with(m: &MinskyMachine, opts: CompileOptions) -> ReductionFormulas {
    Builder { m, literal: opts.literal }.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::classify_fragment;

    #[test]
    fn two_variables_only() {
        for literal in [false, true] {
            let r = compile_with(&MinskyMachine::example(), CompileOptions { literal });
            let p = classify_fragment(&r.phi);
            assert_eq!(r.phi.variables().into_iter().collect::<Vec<_>>(), ["x", "y"]);
            assert!(p.uses_sim && p.uses_order && !p.uses_succ);
            assert_eq!(p.label(), "FO2[~,<]");
            assert!(r.phi.free_vars().is_empty());
            for d in Detector::ALL {
                assert_eq!(r.detector(d).free_vars().into_iter().collect::<Vec<_>>(), ["x"]);
            }
        }
    }

    #[test]
    fn literal_differs_only_where_expected() {
        let m = MinskyMachine::example();
        let i = compile_with(&m, CompileOptions { literal: false });
        let l = compile_with(&m, CompileOptions { literal: true });
        assert_ne!(i.kos, l.kos);
        assert_ne!(i.bad_target, l.bad_target);
        assert_ne!(i.bad_zero_test, l.bad_zero_test);
        assert_eq!(i.bad_seq, l.bad_seq);
        assert_eq!(i.bad_upkeep, l.bad_upkeep);
        assert_eq!(i.prefix_s, l.prefix_s);
    }

    #[test]
    fn signature_layout() {
        let letters = system_letters(&MinskyMachine::example());
        assert_eq!(letters[..7], SYS_FIXED.map(String::from));
        assert_eq!(letters[7..], ["i", "q1", "q2", "h", "t0", "t1", "t2", "t3"].map(String::from));
    }
}
