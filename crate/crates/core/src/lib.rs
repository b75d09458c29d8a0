//! Reactive synthesis on data words: first-order formulas and their
//! model checking, parametrised vector games, and the reduction from
//! two-counter machines.

pub mod arena;
pub mod dataword;
pub mod logic;
pub mod minsky;
pub mod vector_game;
