//! Lattices given by positive definite quadratic forms: Delaunay
//! subdivisions of the lattice point system, covering radius and covering
//! density, Voronoi cells and relevant vectors, facet-count bounds for
//! parallelohedra and stereohedra, and local optimization of the covering
//! density over the form's entries.
//!
//! Everything works in lattice coordinates: the lattice is Z^d and all
//! metric quantities come from a rational Gram matrix, so certificates
//! (sphere emptiness, tile volumes) are exact. A Euclidean basis is only
//! needed when embedding output for display.

mod bounds;
mod delaunay;
mod enumerate;
mod form;
mod optimize;
mod voronoi;

pub use bounds::{facet_bound_check, parallelohedron_facet_bound, stereohedron_facet_bound, FacetBoundReport};
pub use delaunay::{covering_density, covering_radius, lattice_delaunay, DelaunayClass, LatticeDelaunay};
pub use form::QuadraticForm;
pub use optimize::{optimize_covering, OptimizeConfig, OptimizeOutcome, TraceEvent};
pub use voronoi::{relevant_vectors, voronoi_cell, VoronoiCell, VoronoiFacet};

use thiserror::Error;

use crate::rational::Rational;

/// Largest supported ambient dimension for lattice computations.
pub const MAX_LATTICE_DIM: usize = 4;

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square")]
    NotSquare,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension {0} is outside the supported range 1..={MAX_LATTICE_DIM}")]
    UnsupportedDimension(usize),
    #[error("basis is singular or malformed")]
    BadBasis,
    #[error("ellipsoid enumeration exceeded the safety cap")]
    EnumerationTooLarge,
    #[error("subdivision certificates kept failing while enlarging the patch")]
    CertificationFailed,
    #[error("invalid optimizer configuration: {0}")]
    BadConfig(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

/// A lattice: always a Gram matrix, optionally a Euclidean basis (rows are
/// generator vectors) that realizes it.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub basis: Option<Vec<Vec<Rational>>>,
    pub form: QuadraticForm,
}

impl Lattice {
    pub fn from_gram(form: QuadraticForm) -> Self {
        Lattice { basis: None, form }
    }

    /// Builds a lattice from basis rows, deriving the Gram matrix exactly.
    pub fn from_basis(basis: Vec<Vec<Rational>>) -> Result<Self, LatticeError> {
        let form = QuadraticForm::gram_from_basis(&basis)?;
        Ok(Lattice {
            basis: Some(basis),
            form,
        })
    }
}
