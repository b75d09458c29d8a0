//! Formulas of first-order logic over data words.
//!
//! Atoms are action predicates `a(x)`, equality, the position order `<`, the
//! successor `x = y + 1` (x is the position right after y), the process
//! relation `~`, and the pool predicates `ProcS`, `ProcE`, `ProcM`.

mod ast;
mod counting;
mod fragment;
mod parser;
mod render;
mod signature;

pub use ast::*;
pub use counting::{build_split_counting_formula, exactly_one, split_at_least_two_each, CountOutOfRange};
pub use fragment::{classify_fragment, FragmentProfile};
pub use parser::{parse_formula, parse_formula_file, ParseError};
pub use render::render_formula;
pub(crate) use signature::parse_braced_groups;
pub use signature::{is_identifier, Owner, Signature, SignatureError, RESERVED};
