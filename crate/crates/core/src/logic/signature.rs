use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Words that the formula syntax reserves and therefore cannot name an action.
pub const RESERVED: &[&str] = &["E", "A", "true", "false", "ProcS", "ProcE", "ProcM"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("invalid action name `{0}`")]
    InvalidName(String),
    #[error("action name `{0}` is reserved")]
    Reserved(String),
    #[error("action `{0}` belongs to both players")]
    Overlap(String),
    #[error("signature has no actions")]
    Empty,
    #[error("malformed signature header: {0}")]
    Malformed(String),
}

/// Which player an action (or a move) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    System,
    Environment,
}

impl fmt::Display for Owner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Owner::System => f.write_str("System"),
            Owner::Environment => f.write_str("Environment"),
        }
    }
}

/// Action alphabet partitioned between the two players.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    sys: BTreeSet<String>,
    env: BTreeSet<String>,
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<S, E>(sys: S, env: E) -> Result<Self, SignatureError>
    where
        S: IntoIterator,
        S::Item: Into<String>,
        E: IntoIterator,
        E::Item: Into<String>,
    {
        let sys: BTreeSet<String> = sys.into_iter().map(Into::into).collect();
        let env: BTreeSet<String> = env.into_iter().map(Into::into).collect();
        for name in sys.iter().chain(env.iter()) {
            if !is_identifier(name) {
                return Err(SignatureError::InvalidName(name.clone()));
            }
            if RESERVED.contains(&name.as_str()) {
                return Err(SignatureError::Reserved(name.clone()));
            }
        }
        if let Some(shared) = sys.intersection(&env).next() {
            return Err(SignatureError::Overlap(shared.clone()));
        }
        if sys.is_empty() && env.is_empty() {
            return Err(SignatureError::Empty);
        }
        Ok(Signature { sys, env })
    }

    pub fn sys_actions(&self) -> &BTreeSet<String> {
        &self.sys
    }

    pub fn env_actions(&self) -> &BTreeSet<String> {
        &self.env
    }

    pub fn owner(&self, action: &str) -> Option<Owner> {
        if self.sys.contains(action) {
            Some(Owner::System)
        } else if self.env.contains(action) {
            Some(Owner::Environment)
        } else {
            None
        }
    }

    pub fn contains(&self, action: &str) -> bool {
        self.owner(action).is_some()
    }

    /// Parses a `sig S={a,b} E={c}` header line.
    pub fn parse_header(line: &str) -> Result<Self, SignatureError> {
        let rest = line
            .trim()
            .strip_prefix("sig")
            .ok_or_else(|| SignatureError::Malformed(line.to_string()))?;
        let groups = parse_braced_groups(rest).map_err(SignatureError::Malformed)?;
        let mut sys = None;
        let mut env = None;
        for (key, items) in groups {
            match key.as_str() {
                "S" if sys.is_none() => sys = Some(items),
                "E" if env.is_none() => env = Some(items),
                _ => return Err(SignatureError::Malformed(format!("unexpected group `{key}`"))),
            }
        }
        Signature::new(sys.unwrap_or_default(), env.unwrap_or_default())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
        write!(f, "sig S={{{}}} E={{{}}}", join(&self.sys), join(&self.env))
    }
}

/// Splits `K={a,b} L={}` into `[(K, [a, b]), (L, [])]`. Shared by the
/// signature header and the data-word pools header.
pub(crate) fn parse_braced_groups(text: &str) -> Result<Vec<(String, Vec<String>)>, String> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let eq = rest.find('=').ok_or_else(|| format!("expected `KEY={{...}}` in `{rest}`"))?;
        let key = rest[..eq].trim().to_string();
        let after = rest[eq + 1..].trim_start();
        let body = after
            .strip_prefix('{')
            .ok_or_else(|| format!("expected `{{` after `{key}=`"))?;
        let close = body.find('}').ok_or_else(|| format!("unclosed `{{` in group `{key}`"))?;
        let items = body[..close]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        out.push((key, items));
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_overlap_and_bad_names() {
        assert_eq!(
            Signature::new(["a"], ["a"]),
            Err(SignatureError::Overlap("a".into()))
        );
        assert!(matches!(
            Signature::new(["1a"], ["b"]),
            Err(SignatureError::InvalidName(_))
        ));
        assert!(matches!(
            Signature::new(["E"], ["b"]),
            Err(SignatureError::Reserved(_))
        ));
        assert_eq!(
            Signature::new(Vec::<String>::new(), Vec::<String>::new()),
            Err(SignatureError::Empty)
        );
    }

    #[test]
    fn header_round_trip() {
        let sig = Signature::parse_header("sig S={a, b} E={c}").unwrap();
        assert_eq!(sig.owner("a"), Some(Owner::System));
        assert_eq!(sig.owner("c"), Some(Owner::Environment));
        assert_eq!(sig.to_string(), "sig S={a,b} E={c}");
        assert_eq!(Signature::parse_header(&sig.to_string()).unwrap(), sig);
    }
}
