//! Facet-count bounds for tiles of periodic tilings.
//!
//! A parallelohedron (a polytope tiling space by lattice translations) has
//! at most 2(2^d - 1) facets. A stereohedron (a tile of a tiling whose
//! symmetry group acts transitively on tiles, with translation subgroup of
//! index h) has at most 2^d (h + 1) - 2 facets; h = 1 recovers the
//! parallelohedron bound.

use super::LatticeError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetBoundReport {
    pub dim: u32,
    /// Index of the lattice of translations inside the full symmetry group.
    pub index: u64,
    pub bound: u64,
    pub facet_count: Option<u64>,
    /// `facet_count <= bound`, when a count was supplied.
    pub satisfied: Option<bool>,
}

/// Largest facet count of a d-dimensional parallelohedron: 2(2^d - 1).
pub fn parallelohedron_facet_bound(dim: u32) -> Result<u64, LatticeError> {
    stereohedron_facet_bound(dim, 1)
}

/// Largest facet count of a d-dimensional stereohedron for a group whose
/// translation subgroup has index h: 2^d (h + 1) - 2.
pub fn stereohedron_facet_bound(dim: u32, index: u64) -> Result<u64, LatticeError> {
    if dim == 0 {
        return Err(LatticeError::BadParameter("dimension must be at least 1".into()));
    }
    if index == 0 {
        return Err(LatticeError::BadParameter("subgroup index must be at least 1".into()));
    }
    if dim > 62 {
        return Err(LatticeError::BadParameter(format!(
            "dimension {dim} is too large for an exact 64-bit bound"
        )));
    }
    let pow = 1u128 << dim;
    let bound = pow * (index as u128 + 1) - 2;
    u64::try_from(bound).map_err(|_| {
        LatticeError::BadParameter(format!("bound for dim {dim}, index {index} exceeds 64 bits"))
    })
}

/// Evaluates the stereohedron bound and, if a facet count is supplied,
/// whether it satisfies the bound.
pub fn facet_bound_check(
    facet_count: Option<u64>,
    dim: u32,
    index: u64,
) -> Result<FacetBoundReport, LatticeError> {
    let bound = stereohedron_facet_bound(dim, index)?;
    Ok(FacetBoundReport {
        dim,
        index,
        bound,
        facet_count,
        satisfied: facet_count.map(|f| f <= bound),
    })
}
