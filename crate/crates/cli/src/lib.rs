//! Command-line surface: JSON algebra files, EMP text, DOT rendering.

mod cli;
mod format;
mod render;

pub use cli::{cli_main, run};
pub use format::{emp_lines, emp_text, load, parse_emp, parse_json, to_json, AlgebraFile, FileKind, Input};
pub use render::{emp_view, flow, hasse, View};

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(m: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: m.into() }
    }
    pub fn verify(m: impl Into<String>) -> Self {
        CliError { code: EXIT_VERIFY, message: m.into() }
    }
    pub fn not_found(m: impl Into<String>) -> Self {
        CliError { code: EXIT_NOT_FOUND, message: m.into() }
    }
}

/// Render in one of the three views; the EMP view needs a chain.
pub fn render(input: &Input, view: View) -> Result<String, CliError> {
    Ok(match view {
        View::Hasse => hasse(&input.algebra()?),
        View::Emp => emp_view(&input.emp()?),
        View::Flow => flow(&input.algebra()?),
    })
}

#[cfg(test)]
mod tests;
