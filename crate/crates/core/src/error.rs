use thiserror::Error;

use crate::automaton::Violation;

/// Errors raised by the decision procedures and constructors of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid automaton: {}", join(.0))]
    InvalidAutomaton(Vec<Violation>),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol index {0} is outside the alphabet")]
    SymbolOutOfRange(usize),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("state index {0} is out of range")]
    StateOutOfRange(usize),

    #[error("alphabets differ: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    #[error("automaton is not strongly connected")]
    NotStronglyConnected,

    #[error("automaton is not in shift-space mode (every state must be initial and final)")]
    NotShiftSpace,

    #[error("automaton is not deterministic: state `{state}` has several `{symbol}`-transitions")]
    NotDeterministic { state: String, symbol: String },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("power iteration did not converge after {iterations} iterations (last estimate {estimate})")]
    NoConvergence { iterations: usize, estimate: f64 },

    #[error("factor `{0}` of the automaton is not a factor of the reference shift")]
    ContainmentViolation(String),

    #[error("word `{word}` does not label a run ending in state `{state}`")]
    NotInPast { word: String, state: String },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
