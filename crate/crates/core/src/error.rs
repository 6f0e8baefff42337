use thiserror::Error;

use crate::birack::AxiomViolation;

/// Which parameter of a linear or group-based construction failed a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    T,
    R,
    Tau,
    Sigma,
    Rho,
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Param::T => "t",
            Param::R => "r",
            Param::Tau => "tau",
            Param::Sigma => "sigma",
            Param::Rho => "rho",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("malformed birack matrix: {0}")]
    BadMatrix(String),
    #[error("axiom violation: {0}")]
    Axiom(AxiomViolation),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("tau and rho do not commute")]
    NonCommuting,
    #[error("{0} is not invertible modulo n")]
    NotInvertible(Param),
    #[error("s^2 != (1 - tr)s modulo n")]
    IdealViolation,
    #[error("birack would have {0} elements, more than this constructor supports")]
    SizeTooLarge(usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("{0} is not an automorphism")]
    NotAutomorphism(Param),
    #[error("{0} is not an endomorphism")]
    NotEndomorphism(Param),
    #[error("rho must commute with tau and sigma")]
    NotCommuting,
    #[error("compatibility identity fails at y = {}, z = {}", .y + 1, .z + 1)]
    Eq4Fails { y: usize, z: usize },
    #[error("{0:?} is not a subbirack")]
    NotASubbirack(Vec<usize>),
    #[error("gauss code parse error: {0}")]
    Parse(String),
    #[error("crossing {id}: {reason}")]
    BadPairing { id: u32, reason: String },
    #[error("framing vector has length {got}, diagram has {expected} components")]
    LengthMismatch { expected: usize, got: usize },
    #[error("cannot combine invariant values of different kinds")]
    KindMismatch,
    #[error("polynomial parse error: {0}")]
    PolyParse(String),
}
