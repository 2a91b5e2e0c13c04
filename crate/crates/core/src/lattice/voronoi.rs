//! Voronoi cell of the origin: facet normals are the relevant vectors
//! (Voronoi's criterion: v is relevant exactly when ±v are the only minima
//! of the form on the coset v + 2Z^d), vertices are the circumcenters of
//! the Delaunay cells in the star of the origin.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::delaunay::{lattice_delaunay, mat_vec, transpose};
use super::enumerate::points_in_ellipsoid;
use super::{LatticeError, QuadraticForm};
use crate::geometry::polytope_volume;
use crate::rational::Rational;

/// One facet of the Voronoi cell: the bisector 2<x, v> = Q[v] of a relevant
/// vector v, carrying the ids of the cell vertices that lie on it.
#[derive(Clone, Debug, PartialEq)]
pub struct VoronoiFacet {
    pub vector: Vec<BigInt>,
    pub vertex_ids: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VoronoiCell {
    pub dim: usize,
    /// Sorted vertex coordinates (lattice coordinates).
    pub vertices: Vec<Vec<Rational>>,
    pub facets: Vec<VoronoiFacet>,
    /// Always 1 in lattice coordinates; recomputed as a certificate.
    pub volume: Rational,
}

/// The relevant vectors of the form, sorted: v such that the bisector of 0
/// and v supports a facet of the Voronoi cell. Minimization per parity
/// coset runs in reduced coordinates to keep the enumeration small.
pub fn relevant_vectors(form: &QuadraticForm) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    let d = form.dim();
    let (red, u) = form.reduced()?;
    let ut = transpose(&u);
    let four = Rational::from_integer(4.into());
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for mask in 1u32..(1u32 << d) {
        let c: Vec<BigInt> = (0..d)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        // Coset members are c + 2x; Q[c + 2x] = 4 Q[x + c/2], so candidates
        // no worse than the representative c satisfy Q[x + c/2] <= Q[c]/4.
        let center: Vec<Rational> = c
            .iter()
            .map(|ci| Rational::new(-ci.clone(), BigInt::from(2)))
            .collect();
        let bound = red.eval_int(&c) / &four;
        let mut best: Option<Rational> = None;
        let mut achievers: Vec<Vec<BigInt>> = Vec::new();
        for x in points_in_ellipsoid(&red, &center, &bound, false)? {
            let w: Vec<BigInt> = x.iter().zip(&c).map(|(xi, ci)| xi * 2 + ci).collect();
            let val = red.eval_int(&w);
            match &best {
                Some(b) if &val > b => {}
                Some(b) if &val == b => achievers.push(w),
                _ => {
                    best = Some(val);
                    achievers = vec![w];
                }
            }
        }
        // The minimum is attained at least twice (the coset is symmetric
        // under negation); exactly twice means a facet pair.
        if achievers.len() == 2 {
            for w in &achievers {
                out.push(mat_vec(&ut, w));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Voronoi cell of the origin with certified vertex and facet structure:
/// every vertex satisfies every facet inequality exactly, every facet has
/// enough vertices to be a facet, and the vertex hull has volume 1, which
/// pins the cell down completely.
pub fn voronoi_cell(form: &QuadraticForm) -> Result<VoronoiCell, LatticeError> {
    let d = form.dim();
    let del = lattice_delaunay(form)?;

    let mut vertex_set: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for class in &del.classes {
        for v in &class.vertices {
            let shifted: Vec<Rational> = class
                .center
                .iter()
                .zip(v)
                .map(|(c, vi)| c - Rational::from_integer(vi.clone()))
                .collect();
            vertex_set.insert(shifted);
        }
    }
    let vertices: Vec<Vec<Rational>> = vertex_set.into_iter().collect();

    let two = Rational::from_integer(2.into());
    let mut facets = Vec::new();
    for v in relevant_vectors(form)? {
        let vr: Vec<Rational> = v
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let qv = form.eval(&vr);
        let mut on_facet = Vec::new();
        for (i, x) in vertices.iter().enumerate() {
            let twice_inner = &two * form.inner(x, &vr);
            if twice_inner > qv {
                return Err(LatticeError::CertificationFailed);
            }
            if twice_inner == qv {
                on_facet.push(i);
            }
        }
        if on_facet.len() < d {
            return Err(LatticeError::CertificationFailed);
        }
        facets.push(VoronoiFacet {
            vector: v,
            vertex_ids: on_facet,
        });
    }

    let volume =
        polytope_volume(&vertices).map_err(|_| LatticeError::CertificationFailed)?;
    if volume != Rational::one() {
        return Err(LatticeError::CertificationFailed);
    }
    Ok(VoronoiCell {
        dim: d,
        vertices,
        facets,
        volume,
    })
}
