use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Čech cochains only contain B_1..B_p letters, found {0}")]
    NonHolomorphic(String),
    #[error("letter B_{index} out of range for Čech degree {p}")]
    LetterOutOfRange { index: u32, p: usize },
    #[error("trace word of length {found} in a cochain of form degree {q}")]
    WrongFormDegree { found: usize, q: usize },
    #[error("invalid bidegree ({p}, {q}): {reason}")]
    InvalidBidegree { p: usize, q: usize, reason: &'static str },
    #[error("k = {k} is outside the supported range 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("lift step at Čech degree {p} has no solution")]
    Infeasible { p: usize },
    #[error("lift tuple component {index} has bidegree ({p}, {q}), expected ({expected_p}, {expected_q})")]
    TupleShape { index: usize, p: usize, q: usize, expected_p: usize, expected_q: usize },
    #[error("exponent vector has length {found}, expected {p}")]
    ExponentLength { found: usize, p: usize },
    #[error("form is not homogeneous of total degree {0}")]
    NotHomogeneous(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
