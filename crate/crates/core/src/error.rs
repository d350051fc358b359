use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("degenerate triangle: {0}")]
    Degenerate(String),
    #[error("invalid triangle: {0}")]
    InvalidTriangle(String),
    #[error("gluing: {0}")]
    Gluing(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        domain,
    }
}
