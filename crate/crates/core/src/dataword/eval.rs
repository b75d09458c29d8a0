use std::collections::BTreeMap;

use thiserror::Error;

use crate::logic::Formula;

use super::structure::{Element, WordStructure};

/// Values for free variables.
pub type Assignment = BTreeMap<String, Element>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("free variable `{0}` has no value")]
    Unbound(String),
    #[error("variable `{var}` assigned to element {element}, but the structure has {len} elements")]
    OutOfRange { var: String, element: Element, len: usize },
}

pub(crate) fn check_assignment(f: &Formula, s: &WordStructure, env: &Assignment) -> Result<(), EvalError> {
    for v in f.free_vars() {
        match env.get(&v) {
            None => return Err(EvalError::Unbound(v)),
            Some(&e) if e >= s.len() => {
                return Err(EvalError::OutOfRange { var: v, element: e, len: s.len() });
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// Tarskian truth value of `f` in `s` under `env`.
pub fn evaluate(f: &Formula, s: &WordStructure, env: &Assignment) -> Result<bool, EvalError> {
    check_assignment(f, s, env)?;
    let mut stack: Vec<(&str, Element)> = env.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    Ok(eval(f, s, &mut stack))
}

/// Evaluates a closed formula.
pub fn evaluate_closed(f: &Formula, s: &WordStructure) -> Result<bool, EvalError> {
    evaluate(f, s, &Assignment::new())
}

fn lookup(stack: &[(&str, Element)], v: &str) -> Element {
    stack
        .iter()
        .rev()
        .find(|(name, _)| *name == v)
        .map(|&(_, e)| e)
        .expect("free variables checked before evaluation")
}

fn eval<'f>(f: &'f Formula, s: &WordStructure, stack: &mut Vec<(&'f str, Element)>) -> bool {
    match f {
        Formula::Action(a, x) => s.has_action(a, lookup(stack, x)),
        Formula::Eq(x, y) => lookup(stack, x) == lookup(stack, y),
        Formula::Lt(x, y) => s.less(lookup(stack, x), lookup(stack, y)),
        Formula::Succ(x, y) => s.successor(lookup(stack, x), lookup(stack, y)),
        Formula::Sim(x, y) => s.sim(lookup(stack, x), lookup(stack, y)),
        Formula::Proc(p, x) => s.in_pool(*p, lookup(stack, x)),
        Formula::True => true,
        Formula::False => false,
        Formula::Not(g) => !eval(g, s, stack),
        Formula::And(l, r) => eval(l, s, stack) && eval(r, s, stack),
        Formula::Or(l, r) => eval(l, s, stack) || eval(r, s, stack),
        Formula::Exists(v, body) => quantify(v, body, s, stack, true),
        Formula::Forall(v, body) => quantify(v, body, s, stack, false),
    }
}

fn quantify<'f>(
    v: &'f str,
    body: &'f Formula,
    s: &WordStructure,
    stack: &mut Vec<(&'f str, Element)>,
    existential: bool,
) -> bool {
    for e in s.elements() {
        stack.push((v, e));
        let b = eval(body, s, stack);
        stack.pop();
        if b == existential {
            return existential;
        }
    }
    !existential
}
