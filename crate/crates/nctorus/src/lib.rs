//! File formats, expression grammars and the verification driver on top of
//! [`nctorus_core`].

pub mod exact;
pub mod expr;
pub mod param;
pub mod random;
pub mod render;
pub mod suites;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] expr::ParseError),
    #[error(transparent)]
    Core(#[from] nctorus_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
