//! The pure cubic ring Z[ρ] with ρ³ = q and the Diophantine equations it
//! governs: the Pell analogue qx³ + y³ = 1, solved through a fundamental
//! unit certificate, and monic binary cubic Thue equations f(x,y) = 1 with
//! negative discriminant, solved by exact bounded search.
//!
//! Solvers never claim completeness beyond what they certify: unit searches
//! report their coefficient box and bounded searches their coordinate
//! bound, so a caller can always tell a proven list from a surveyed one.

mod ring;
mod thue;
mod units;

pub use ring::{cubic_multiply, cubic_norm, PureCubicInteger};
pub use thue::{cubic_discriminant, solve_thue, ThueEquation, DEFAULT_SEARCH_BOUND};
pub use units::{fundamental_unit, solve_cubic_pell, UnitCertificate, DEFAULT_UNIT_BOX};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CubicError {
    #[error("radicand mismatch: {left} vs {right}")]
    RadicandMismatch { left: BigInt, right: BigInt },
    #[error("{q} is a perfect cube, so adjoining its cube root gives no cubic ring")]
    PerfectCube { q: BigInt },
    #[error("radicand {q} is below 2")]
    RadicandTooSmall { q: BigInt },
    #[error("no unit with real value in (0,1) has all coefficients within {search_box}")]
    NoUnitInBox { search_box: i64 },
    #[error("discriminant {0} is nonnegative; only the one-real-root class is solvable here")]
    NonnegativeDiscriminant(BigInt),
    #[error("search bound must be at least 1")]
    ZeroBound,
    #[error("form is decomposable: x - ({root})y divides it")]
    Decomposable { root: BigInt },
}

/// How a solution list was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionMethod {
    /// Derived from a fundamental-unit certificate.
    UnitBased,
    /// Exhaustive exact search up to the reported bound.
    BoundedSearch,
}

/// Solutions of one equation, with provenance. `search_bound` is the unit
/// coefficient box for unit-based reports and the coordinate bound for
/// bounded searches; completeness beyond it is not claimed.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionReport {
    /// Sorted lexicographically, no duplicates; every pair satisfies the
    /// equation exactly.
    pub solutions: Vec<(i64, i64)>,
    pub search_bound: i64,
    pub method: SolutionMethod,
    /// True when the count respects the at-most-five theorem; false would
    /// signal an implementation bug, not a mathematical discovery.
    pub cap_audit: bool,
    /// The certificate behind a unit-based report.
    pub unit: Option<UnitCertificate>,
}
