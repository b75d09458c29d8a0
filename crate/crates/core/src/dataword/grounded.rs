//! Reference evaluator: expands every quantifier into a Boolean combination
//! over all domain elements, then evaluates the resulting circuit bottom-up.
//! Slow and memory hungry; it exists to cross-check [`evaluate`](super::evaluate).

use std::collections::BTreeMap;

use crate::logic::Formula;

use super::eval::{check_assignment, Assignment, EvalError};
use super::structure::{Element, WordStructure};

#[derive(Debug, Clone)]
enum Gate {
    Const(bool),
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
}

/// Gates are appended children-first, so a single forward pass evaluates them.
#[derive(Debug, Default)]
struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    fn push(&mut self, g: Gate) -> usize {
        self.gates.push(g);
        self.gates.len() - 1
    }

    fn ground(&mut self, f: &Formula, s: &WordStructure, subst: &BTreeMap<String, Element>) -> usize {
        let val = |v: &String| subst[v];
        let atom = match f {
            Formula::Action(a, x) => Some(s.has_action(a, val(x))),
            Formula::Eq(x, y) => Some(val(x) == val(y)),
            Formula::Lt(x, y) => Some(s.less(val(x), val(y))),
            Formula::Succ(x, y) => Some(s.successor(val(x), val(y))),
            Formula::Sim(x, y) => Some(s.sim(val(x), val(y))),
            Formula::Proc(p, x) => Some(s.in_pool(*p, val(x))),
            Formula::True => Some(true),
            Formula::False => Some(false),
            _ => None,
        };
        if let Some(b) = atom {
            return self.push(Gate::Const(b));
        }
        match f {
            Formula::Not(g) => {
                let c = self.ground(g, s, subst);
                self.push(Gate::Not(c))
            }
            Formula::And(l, r) => {
                let a = self.ground(l, s, subst);
                let b = self.ground(r, s, subst);
                self.push(Gate::And(vec![a, b]))
            }
            Formula::Or(l, r) => {
                let a = self.ground(l, s, subst);
                let b = self.ground(r, s, subst);
                self.push(Gate::Or(vec![a, b]))
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let children = s
                    .elements()
                    .map(|e| {
                        let mut inner = subst.clone();
                        inner.insert(v.clone(), e);
                        self.ground(body, s, &inner)
                    })
                    .collect();
                if matches!(f, Formula::Exists(..)) {
                    self.push(Gate::Or(children))
                } else {
                    self.push(Gate::And(children))
                }
            }
            _ => unreachable!("atoms handled above"),
        }
    }

    fn evaluate(&self) -> Vec<bool> {
        let mut vals: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g {
                Gate::Const(b) => *b,
                Gate::Not(c) => !vals[*c],
                Gate::And(cs) => cs.iter().all(|&c| vals[c]),
                Gate::Or(cs) => cs.iter().any(|&c| vals[c]),
            };
            vals.push(v);
        }
        vals
    }
}

pub fn evaluate_grounded(f: &Formula, s: &WordStructure, env: &Assignment) -> Result<bool, EvalError> {
    check_assignment(f, s, env)?;
    let mut circuit = Circuit::default();
    let root = circuit.ground(f, s, env);
    Ok(circuit.evaluate()[root])
}
