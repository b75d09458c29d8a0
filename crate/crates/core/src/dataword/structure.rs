use crate::logic::{Pool, Signature};

use super::word::{DataWord, ProcessPools, WordError};

/// Index of a domain element: positions come first (`0..n`), then one element
/// per process in pool order S, E, M.
pub type Element = usize;

/// A data word materialised as a finite logical structure.
///
/// `~` relates two elements iff they belong to the same process, where a
/// process element belongs to itself. Distinct process elements are never
/// related.
#[derive(Debug, Clone)]
pub struct WordStructure {
    n_positions: usize,
    actions: Vec<String>,
    /// For every element, the element index of its process.
    process_of: Vec<Element>,
    /// Pool tag of process elements; `None` on positions.
    pools: Vec<Option<Pool>>,
    process_names: Vec<String>,
}

impl WordStructure {
    pub fn new(word: &DataWord, pools: &ProcessPools, sig: &Signature) -> Result<Self, WordError> {
        word.validate(pools, sig)?;
        let n = word.len();
        let mut process_names = Vec::with_capacity(pools.len());
        let mut tags = vec![None; n];
        for (pool, set) in [(Pool::Sys, pools.sys()), (Pool::Env, pools.env()), (Pool::Mixed, pools.mixed())] {
            for p in set {
                process_names.push(p.clone());
                tags.push(Some(pool));
            }
        }
        let index_of = |p: &str| n + process_names.iter().position(|q| q == p).expect("validated");
        let mut process_of: Vec<Element> = word.positions.iter().map(|p| index_of(&p.process)).collect();
        process_of.extend(n..n + process_names.len());
        Ok(WordStructure {
            n_positions: n,
            actions: word.positions.iter().map(|p| p.action.clone()).collect(),
            process_of,
            pools: tags,
            process_names,
        })
    }

    pub fn len(&self) -> usize {
        self.process_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_positions(&self) -> usize {
        self.n_positions
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.len()
    }

    pub fn is_position(&self, e: Element) -> bool {
        e < self.n_positions
    }

    pub fn process_element(&self, name: &str) -> Option<Element> {
        self.process_names.iter().position(|p| p == name).map(|i| self.n_positions + i)
    }

    pub fn has_action(&self, a: &str, e: Element) -> bool {
        e < self.n_positions && self.actions[e] == a
    }

    pub fn action_at(&self, e: Element) -> Option<&str> {
        self.actions.get(e).map(String::as_str)
    }

    pub fn less(&self, x: Element, y: Element) -> bool {
        x < self.n_positions && y < self.n_positions && x < y
    }

    /// `x = y + 1`.
    pub fn successor(&self, x: Element, y: Element) -> bool {
        x < self.n_positions && y < self.n_positions && x == y + 1
    }

    pub fn sim(&self, x: Element, y: Element) -> bool {
        self.process_of[x] == self.process_of[y]
    }

    pub fn in_pool(&self, pool: Pool, e: Element) -> bool {
        self.pools[e] == Some(pool)
    }

    pub fn pool_of(&self, e: Element) -> Option<Pool> {
        self.pools[e]
    }
}
