use std::collections::BTreeSet;

use super::ast::Formula;

/// Syntactic summary of which part of first-order logic a formula lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentProfile {
    pub variables: BTreeSet<String>,
    pub uses_order: bool,
    pub uses_succ: bool,
    pub uses_sim: bool,
    pub uses_eq: bool,
}

impl FragmentProfile {
    pub fn is_two_variable(&self) -> bool {
        self.variables.len() <= 2
    }

    /// Binary predicates that occur, in the fixed order `~ < +1 =`.
    pub fn predicates(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.uses_sim {
            out.push("~");
        }
        if self.uses_order {
            out.push("<");
        }
        if self.uses_succ {
            out.push("+1");
        }
        if self.uses_eq {
            out.push("=");
        }
        out
    }

    /// Label such as `FO2[~,<]`. Equality is part of every fragment and is not
    /// listed; formulas with at most two variables are labelled `FO2`.
    pub fn label(&self) -> String {
        let width = self.variables.len().max(2);
        let preds: Vec<&str> = self.predicates().into_iter().filter(|p| *p != "=").collect();
        format!("FO{width}[{}]", preds.join(","))
    }
}

pub fn classify_fragment(f: &Formula) -> FragmentProfile {
    let mut p = FragmentProfile {
        variables: f.variables(),
        uses_order: false,
        uses_succ: false,
        uses_sim: false,
        uses_eq: false,
    };
    f.visit(&mut |g| match g {
        Formula::Lt(..) => p.uses_order = true,
        Formula::Succ(..) => p.uses_succ = true,
        Formula::Sim(..) => p.uses_sim = true,
        Formula::Eq(..) => p.uses_eq = true,
        _ => {}
    });
    p
}
