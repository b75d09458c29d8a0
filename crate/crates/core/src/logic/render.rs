use std::fmt;

use super::ast::Formula;

/// Binding strength of the context a subformula is printed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Ctx {
    Or,
    And,
    Unary,
}

/// Prints a formula in the concrete syntax accepted by
/// [`parse_formula`](super::parse_formula). No simplification is applied.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, Ctx::Or, false, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

fn is_binary_atom(f: &Formula) -> bool {
    matches!(f, Formula::Eq(..) | Formula::Lt(..) | Formula::Succ(..) | Formula::Sim(..))
}

/// `followed` is true when more input follows at the same nesting level, in
/// which case a quantifier must be parenthesised to stop its body there.
fn write_formula(f: &Formula, ctx: Ctx, followed: bool, out: &mut String) {
    match f {
        Formula::Action(a, x) => {
            out.push_str(a);
            out.push('(');
            out.push_str(x);
            out.push(')');
        }
        Formula::Proc(p, x) => {
            out.push_str(p.predicate_name());
            out.push('(');
            out.push_str(x);
            out.push(')');
        }
        Formula::Eq(x, y) => out.push_str(&format!("{x} = {y}")),
        Formula::Lt(x, y) => out.push_str(&format!("{x} < {y}")),
        Formula::Succ(x, y) => out.push_str(&format!("{x} = {y} + 1")),
        Formula::Sim(x, y) => out.push_str(&format!("{x} ~ {y}")),
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Not(g) => {
            out.push('!');
            if is_binary_atom(g) {
                out.push('(');
                write_formula(g, Ctx::Or, false, out);
                out.push(')');
            } else {
                write_formula(g, Ctx::Unary, followed, out);
            }
        }
        Formula::And(l, r) => {
            let paren = ctx > Ctx::And;
            let tail = followed && !paren;
            if paren {
                out.push('(');
            }
            write_formula(l, Ctx::And, true, out);
            out.push_str(" & ");
            write_formula(r, Ctx::Unary, tail, out);
            if paren {
                out.push(')');
            }
        }
        Formula::Or(l, r) => {
            let paren = ctx > Ctx::Or;
            let tail = followed && !paren;
            if paren {
                out.push('(');
            }
            write_formula(l, Ctx::Or, true, out);
            out.push_str(" | ");
            write_formula(r, Ctx::And, tail, out);
            if paren {
                out.push(')');
            }
        }
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let q = if matches!(f, Formula::Exists(..)) { "E" } else { "A" };
            if followed {
                out.push('(');
            }
            out.push_str(q);
            out.push(' ');
            out.push_str(v);
            out.push_str(". ");
            write_formula(body, Ctx::Or, false, out);
            if followed {
                out.push(')');
            }
        }
    }
}
