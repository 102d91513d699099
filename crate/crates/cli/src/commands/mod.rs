pub mod bench;
pub mod gen;
pub mod reduce;
pub mod solve;
pub mod verify;

use happy_core::io::parse_rational;
use happy_core::HappinessMode;

use crate::CliError;

/// Parses the `--mode` value list: `strict`, `soft <p>/<q>` or `hard <q>`.
pub fn parse_mode(tokens: &[String]) -> Result<HappinessMode, CliError> {
    match tokens {
        [s] if s == "strict" => Ok(HappinessMode::Strict),
        [s, frac] if s == "soft" => {
            let rho = parse_rational(frac)
                .ok_or_else(|| CliError::contract(format!("invalid fraction '{frac}'")))?;
            HappinessMode::soft(rho).map_err(|e| CliError::contract(e.to_string()))
        }
        [s, q] if s == "hard" => {
            let q: usize = q
                .parse()
                .map_err(|_| CliError::contract(format!("invalid hard threshold '{q}'")))?;
            HappinessMode::hard(q).map_err(|e| CliError::contract(e.to_string()))
        }
        _ => Err(CliError::contract(
            "--mode takes 'strict', 'soft <p>/<q>' or 'hard <q>'",
        )),
    }
}

pub fn mode_label(mode: HappinessMode) -> String {
    match mode {
        HappinessMode::Strict => "strict".into(),
        HappinessMode::Soft(r) => format!("soft {}/{}", r.numer(), r.denom()),
        HappinessMode::Hard(q) => format!("hard {q}"),
    }
}
