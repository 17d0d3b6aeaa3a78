//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("element is not regular at t = 0: {value}")]
    NotIntegral { value: String },
    #[error("cyclotomic order {order} has phi({order}) = {phi} > {max}")]
    OrderTooLarge { order: u32, phi: u32, max: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("associativity fails at (i, j, k, l) = ({i}, {j}, {k}, {l})")]
    Associativity { i: usize, j: usize, k: usize, l: usize },
    #[error("unit law fails: e_{unit} * e_{j} has wrong coefficient on e_{k}")]
    UnitLaw { unit: usize, j: usize, k: usize },
    #[error("structure constant at ({i}, {j}, {k}) is not regular at t = 0")]
    NonIntegralConstant { i: usize, j: usize, k: usize },
    #[error("module action violates the structure constants at ({i}, {j})")]
    NotAModule { i: usize, j: usize },
    #[error("semisimple quotient does not split over the base field: {reason}")]
    NonSplit { reason: String },
    #[error("supplied simple modules are not complete: sum of squared dimensions {found} != {expected}")]
    IncompleteSimples { found: usize, expected: usize },
    #[error("parameter q = {q} lies in the degenerate set {{0, -1, zeta_3, zeta_3^2}}")]
    DegenerateParameter { q: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("seed vectors span a module of rank {found}, ambient dimension is {expected}")]
    SeedsDoNotSpan { found: usize, expected: usize },
    #[error("element is not idempotent in the reduced algebra")]
    NotAnIdempotent,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdeError {
    #[error("audit '{name}' fails: {lhs} != {rhs}")]
    AuditFailure {
        name: String,
        lhs: String,
        rhs: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OslError {
    #[error("window weights collide modulo t: ({gamma_a}, depth {depth_a}) and ({gamma_b}, depth {depth_b})")]
    CongruenceViolation {
        gamma_a: String,
        depth_a: usize,
        gamma_b: String,
        depth_b: usize,
    },
    #[error("weight {weight} is outside the window")]
    WeightOutsideWindow { weight: String },
    #[error("character system has no nonnegative integer solution at weight {weight}")]
    NonIntegralSolution { weight: String },
    #[error("duality mismatch at pairs {pairs:?} (lambda, mu, lhs, rhs)")]
    DualityMismatch { pairs: Vec<(String, String, usize, usize)> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
