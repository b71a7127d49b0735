use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph is disconnected: no path between vertices {from} and {to}")]
    DisconnectedGraph { from: usize, to: usize },
    #[error("vertex index {index} out of range for graph with {len} vertices")]
    InvalidVertex { index: usize, len: usize },
    #[error("all input points are collinear")]
    CollinearInput,
    #[error("dilation must be at least 1, got {0}")]
    InvalidDilation(f64),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("input is not five points in convex position")]
    NotFiveConvex,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("wedge angle {xi} rad does not exceed pi/4")]
    WedgeTooShallow { xi: f64 },
    #[error("invalid point count {0}: must be at least 4 and divisible by 4")]
    InvalidCount(usize),
    #[error("too few points: need at least {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("combinatorial budget exhausted after {examined} subsets of {points} points")]
    SearchBudget { examined: u64, points: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
