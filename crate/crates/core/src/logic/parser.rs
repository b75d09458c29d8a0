//! Recursive-descent parser for the formula concrete syntax.
//!
//! ```text
//! formula := or
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | ('E' | 'A') ident '.' formula | primary
//! primary := '(' formula ')' | 'true' | 'false'
//!          | ident '(' ident ')'                  -- action or ProcS/ProcE/ProcM
//!          | ident ('=' | '<' | '~') ident
//!          | ident '=' ident '+' '1'
//! ```
//!
//! Binary connectives associate to the left; a quantifier body extends as far
//! right as possible. `#` starts a comment that runs to the end of the line.

use thiserror::Error;

use super::ast::{Formula, Pool};
use super::signature::{Signature, SignatureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown action `{name}`")]
    UnknownAction { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown predicate `{name}`")]
    UnknownPredicate { line: usize, col: usize, name: String },
    #[error("signature: {0}")]
    Signature(#[from] SignatureError),
    #[error("no signature: add a `sig S={{...}} E={{...}}` header or pass one explicitly")]
    MissingSignature,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    Dot,
    And,
    Or,
    Bang,
    Eq,
    Lt,
    Tilde,
    Plus,
    /// Relation symbols outside the grammar (`>`, `<=`, `!=`, ...).
    Other(String),
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Num(s) | Tok::Other(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Dot => "`.`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Bang => "`!`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Lt => "`<`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let tok = if matches!(two.as_str(), "<=" | ">=" | "!=" | "->") {
            advance(2, &mut i, &mut col);
            Tok::Other(two)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
                col += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
                col += 1;
            }
            Tok::Num(chars[start..i].iter().collect())
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => Tok::Dot,
                '&' => Tok::And,
                '|' => Tok::Or,
                '!' => Tok::Bang,
                '=' => Tok::Eq,
                '<' => Tok::Lt,
                '~' => Tok::Tilde,
                '+' => Tok::Plus,
                '>' => Tok::Other(">".into()),
                other => {
                    return Err(ParseError::Syntax {
                        line: l0,
                        col: c0,
                        msg: format!("unexpected character `{other}`"),
                    })
                }
            };
            advance(1, &mut i, &mut col);
            t
        };
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'s Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, at: &Spanned, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { line: at.line, col: at.col, msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Spanned, ParseError> {
        let t = self.bump();
        if t.tok == want {
            Ok(t)
        } else {
            self.syntax(&t, format!("expected {what}, found {}", describe(&t.tok)))
        }
    }

    fn variable(&mut self, role: &str) -> Result<String, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Ident(ref s) if !is_keyword(s) => Ok(s.clone()),
            _ => self.syntax(&t, format!("expected {role}, found {}", describe(&t.tok))),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek().tok == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Bang => {
                self.bump();
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Tok::Ident(q) if (q == "E" || q == "A") && matches!(self.peek2(), Tok::Ident(_)) => {
                self.bump();
                let var = self.variable("a quantified variable")?;
                self.expect(Tok::Dot, "`.` after the quantified variable")?;
                let body = Box::new(self.formula()?);
                Ok(if q == "E" { Formula::Exists(var, body) } else { Formula::Forall(var, body) })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(ref s) if s == "true" => Ok(Formula::True),
            Tok::Ident(ref s) if s == "false" => Ok(Formula::False),
            Tok::Ident(ref name) if self.peek().tok == Tok::LParen => {
                self.bump();
                let var = self.variable("a variable")?;
                self.expect(Tok::RParen, "`)`")?;
                if let Some(pool) = Pool::from_predicate(name) {
                    Ok(Formula::Proc(pool, var))
                } else if self.sig.contains(name) {
                    Ok(Formula::Action(name.clone(), var))
                } else if name.starts_with("Proc") || is_keyword(name) {
                    Err(ParseError::UnknownPredicate { line: t.line, col: t.col, name: name.clone() })
                } else {
                    Err(ParseError::UnknownAction { line: t.line, col: t.col, name: name.clone() })
                }
            }
            Tok::Ident(ref lhs) if !is_keyword(lhs) => {
                let lhs = lhs.clone();
                let op = self.bump();
                match op.tok {
                    Tok::Eq => {
                        let rhs = self.variable("a right operand")?;
                        if self.peek().tok == Tok::Plus {
                            self.bump();
                            let one = self.bump();
                            if one.tok != Tok::Num("1".into()) {
                                return self.syntax(&one, "only `+ 1` is supported after `=`");
                            }
                            Ok(Formula::Succ(lhs, rhs))
                        } else {
                            Ok(Formula::Eq(lhs, rhs))
                        }
                    }
                    Tok::Lt => Ok(Formula::Lt(lhs, self.variable("a right operand")?)),
                    Tok::Tilde => Ok(Formula::Sim(lhs, self.variable("a right operand")?)),
                    Tok::Other(ref s) => Err(ParseError::UnknownPredicate {
                        line: op.line,
                        col: op.col,
                        name: s.clone(),
                    }),
                    _ => self.syntax(
                        &op,
                        format!("expected `=`, `<`, `~` or `(` after `{lhs}`, found {}", describe(&op.tok)),
                    ),
                }
            }
            _ => self.syntax(&t, format!("expected a formula, found {}", describe(&t.tok))),
        }
    }
}

fn is_keyword(s: &str) -> bool {
    super::signature::RESERVED.contains(&s)
}

/// Parses one formula against `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, sig };
    let f = p.formula()?;
    let end = p.peek().clone();
    if end.tok != Tok::Eof {
        return p.syntax(&end, format!("unexpected {} after formula", describe(&end.tok)));
    }
    Ok(f)
}

/// Parses a formula file: optional `sig ...` header line, then one formula.
/// A header overrides `fallback`.
pub fn parse_formula_file(
    text: &str,
    fallback: Option<&Signature>,
) -> Result<(Signature, Formula), ParseError> {
    let mut header = None;
    let mut body = String::with_capacity(text.len());
    let mut seen_code = false;
    for line in text.split_inclusive('\n') {
        let code = line.split('#').next().unwrap_or("").trim();
        if header.is_none() && !seen_code && code.starts_with("sig ") {
            header = Some(Signature::parse_header(code)?);
            // keep line numbering stable for diagnostics
            body.push('\n');
        } else {
            seen_code |= !code.is_empty();
            body.push_str(line);
        }
    }
    let sig = match (header, fallback) {
        (Some(h), _) => h,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(ParseError::MissingSignature),
    };
    let f = parse_formula(&body, &sig)?;
    Ok((sig, f))
}
