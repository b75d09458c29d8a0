//! Two-variable process counting.
//!
//! With two reusable variables one can state that a process carries at least
//! one or at least two positions with a given action, but not more. Larger
//! counts are reached by splitting a letter into several letters that play the
//! same role and conjoining their "at least two" formulas.

use thiserror::Error;

use super::ast::{action, and, exists, not, eq, sim, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("two variables only count up to 2 occurrences per letter, got {0}; split the letter instead")]
pub struct CountOutOfRange(pub u32);

fn other_var(v: &str) -> &'static str {
    if v == "x" {
        "y"
    } else {
        "x"
    }
}

/// Formula with free variable `free_var`, true of an element iff its process
/// carries at least `k` positions labelled `a` (`k` is 1 or 2).
pub fn build_split_counting_formula(a: &str, k: u32, free_var: &str) -> Result<Formula, CountOutOfRange> {
    let y = other_var(free_var);
    match k {
        1 => Ok(exists(y, and(sim(y, free_var), action(a, y)))),
        // The inner quantifier reuses `free_var`; the outer binding is no
        // longer needed once `y` has been tied to the process.
        2 => Ok(exists(
            y,
            and(
                and(sim(y, free_var), action(a, y)),
                exists(free_var, and(and(sim(free_var, y), not(eq(free_var, y))), action(a, free_var))),
            ),
        )),
        other => Err(CountOutOfRange(other)),
    }
}

/// Exactly one `a` on the process: at least one and not at least two.
pub fn exactly_one(a: &str, free_var: &str) -> Formula {
    let one = build_split_counting_formula(a, 1, free_var).expect("k = 1");
    let two = build_split_counting_formula(a, 2, free_var).expect("k = 2");
    and(one, not(two))
}

/// At least `2 * parts.len()` role letters on the process, where `parts` are
/// the split copies of one letter (e.g. `a1`, `a2`).
pub fn split_at_least_two_each(parts: &[&str], free_var: &str) -> Formula {
    parts
        .iter()
        .map(|p| build_split_counting_formula(p, 2, free_var).expect("k = 2"))
        .reduce(and)
        .unwrap_or(Formula::True)
}
