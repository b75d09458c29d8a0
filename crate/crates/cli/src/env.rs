use std::io::{self, Write};

use dwsynth::arena::{compliant_env_policy, Blocker, EnvironmentPolicy, PrematureOke, RandomEnv, Scripted};
use dwsynth::dataword::Position;
use dwsynth::minsky::{MinskyMachine, ENV_PROCESS};

/// Reads Environment moves from standard input: `-` or an empty line passes,
/// `oke` / `koe` play on Environment's process, `action@process` is explicit.
pub struct Manual;

impl EnvironmentPolicy for Manual {
    fn name(&self) -> String {
        "manual".into()
    }

    fn next_move(&self, history: &[Position]) -> Option<Position> {
        let mut err = io::stderr();
        let tail: Vec<String> = history.iter().rev().take(6).rev().map(Position::to_string).collect();
        let _ = write!(err, "[{}] {} > ", history.len(), tail.join(" "));
        let _ = err.flush();
        let mut line = String::new();
        if io::stdin().read_line(&mut line).ok()? == 0 {
            return None;
        }
        let line = line.trim();
        match line {
            "" | "-" => None,
            _ => match line.split_once('@') {
                Some((a, p)) => Some(Position::new(a.trim(), p.trim())),
                None => Some(Position::new(line, ENV_PROCESS)),
            },
        }
    }
}

/// Policy named on the command line.
pub fn parse_policy(name: &str, m: &MinskyMachine, seed: u64) -> Result<Box<dyn EnvironmentPolicy>, String> {
    Ok(match name {
        "compliant" => Box::new(compliant_env_policy(m)),
        "blocker" => Box::new(Blocker),
        "premature-oke" => Box::new(PrematureOke::new(m)),
        "oke-after-ko" => Box::new(PrematureOke::oke_after_ko(m)),
        "random" => Box::new(RandomEnv::new(seed)),
        "manual" => Box::new(Manual),
        _ => {
            if let Some(script) = name.strip_prefix("script:") {
                Box::new(Scripted::parse(ENV_PROCESS, script))
            } else if let Some(s) = name.strip_prefix("random:") {
                let seed = s.parse().map_err(|e| format!("bad seed in `{name}`: {e}"))?;
                Box::new(RandomEnv::new(seed))
            } else {
                return Err(format!(
                    "unknown policy `{name}` (expected compliant, blocker, premature-oke, oke-after-ko, \
                     script:..., random[:SEED], manual or suite)"
                ));
            }
        }
    })
}

/// Seed used by a named random policy, for the trace metadata.
pub fn policy_seed(name: &str, seed: u64) -> Option<u64> {
    match name {
        "random" => Some(seed),
        _ => name.strip_prefix("random:").and_then(|s| s.parse().ok()),
    }
}
