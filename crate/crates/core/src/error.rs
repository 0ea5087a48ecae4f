use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("resource limit exceeded: {what} ({requested} > {limit})")]
    Resource {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("no character of order {ell} modulo {f}: {f} is not 1 mod {ell}")]
    NoCharacter { f: u64, ell: u32 },

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: u64, m: u64 },

    #[error("value out of supported range: {0}")]
    Range(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("division by zero in Z[w]")]
    DivisionByZero,

    #[error("cubic symbol undefined: arguments share a factor")]
    SymbolUndefined,

    #[error("usage: {0}")]
    Usage(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("solver failed: {0}")]
    Solver(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
