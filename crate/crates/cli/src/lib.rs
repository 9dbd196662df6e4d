//! Front end for `polyzeta`: an expression language for polynomials in the derivatives of
//! zeta, a run configuration, and the subcommand dispatcher behind the `polyzeta` binary.

pub mod config;
pub mod parse;
pub mod run;

use polyzeta::{ErrorClass, Polynomial};
use thiserror::Error;

pub use config::RunConfig;
pub use parse::parse_polynomial;
pub use run::{dispatch, Cli};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bad argument: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] polyzeta::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for I/O, 2 for malformed input, 3 for numerical failure, 4 for exhausted budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Config(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => 2,
                ErrorClass::Numeric => 3,
                ErrorClass::Budget => 4,
            },
        }
    }
}

/// Parses `text` and binds the result to zeta with the given truncation settings.
pub fn parse_expression(text: &str, zeta: polyzeta::zeta::ZetaParams) -> Result<polyzeta::Composed, CliError> {
    let p: Polynomial = parse_polynomial(text)?;
    Ok(polyzeta::Composed::new(p, polyzeta::zeta::zeta_function(zeta)))
}
