use std::collections::BTreeSet;

/// Process pool tag used by the `ProcS` / `ProcE` / `ProcM` predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pool {
    Sys,
    Env,
    Mixed,
}

impl Pool {
    pub fn predicate_name(self) -> &'static str {
        match self {
            Pool::Sys => "ProcS",
            Pool::Env => "ProcE",
            Pool::Mixed => "ProcM",
        }
    }

    pub fn from_predicate(name: &str) -> Option<Pool> {
        match name {
            "ProcS" => Some(Pool::Sys),
            "ProcE" => Some(Pool::Env),
            "ProcM" => Some(Pool::Mixed),
            _ => None,
        }
    }
}

/// First-order formula over the data-word signature.
///
/// `Succ(x, y)` reads "x is the successor of y", i.e. the concrete syntax
/// `x = y + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Action(String, String),
    Eq(String, String),
    Lt(String, String),
    Succ(String, String),
    Sim(String, String),
    Proc(Pool, String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

pub fn action(name: impl Into<String>, var: impl Into<String>) -> Formula {
    Formula::Action(name.into(), var.into())
}

pub fn eq(x: impl Into<String>, y: impl Into<String>) -> Formula {
    Formula::Eq(x.into(), y.into())
}

pub fn lt(x: impl Into<String>, y: impl Into<String>) -> Formula {
    Formula::Lt(x.into(), y.into())
}

pub fn succ(x: impl Into<String>, y: impl Into<String>) -> Formula {
    Formula::Succ(x.into(), y.into())
}

pub fn sim(x: impl Into<String>, y: impl Into<String>) -> Formula {
    Formula::Sim(x.into(), y.into())
}

pub fn proc(pool: Pool, x: impl Into<String>) -> Formula {
    Formula::Proc(pool, x.into())
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn and(l: Formula, r: Formula) -> Formula {
    Formula::And(Box::new(l), Box::new(r))
}

pub fn or(l: Formula, r: Formula) -> Formula {
    Formula::Or(Box::new(l), Box::new(r))
}

/// `!l | r`; the grammar has no implication connective.
pub fn implies(l: Formula, r: Formula) -> Formula {
    or(not(l), r)
}

pub fn exists(v: impl Into<String>, body: Formula) -> Formula {
    Formula::Exists(v.into(), Box::new(body))
}

pub fn forall(v: impl Into<String>, body: Formula) -> Formula {
    Formula::Forall(v.into(), Box::new(body))
}

/// Left-nested conjunction; `true` when empty.
pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
    items.into_iter().reduce(and).unwrap_or(Formula::True)
}

/// Left-nested disjunction; `false` when empty.
pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
    items.into_iter().reduce(or).unwrap_or(Formula::False)
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut see = |v: &'a str, bound: &Vec<&'a str>| {
            if !bound.contains(&v) {
                out.insert(v.to_string());
            }
        };
        match self {
            Formula::Action(_, x) | Formula::Proc(_, x) => see(x, bound),
            Formula::Eq(x, y) | Formula::Lt(x, y) | Formula::Succ(x, y) | Formula::Sim(x, y) => {
                see(x, bound);
                see(y, bound);
            }
            Formula::True | Formula::False => {}
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                bound.push(v);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring in the formula, bound or free.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Action(_, x) | Formula::Proc(_, x) => {
                out.insert(x.clone());
            }
            Formula::Eq(x, y) | Formula::Lt(x, y) | Formula::Succ(x, y) | Formula::Sim(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    pub fn actions(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Action(a, _) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(f),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            _ => {}
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}
