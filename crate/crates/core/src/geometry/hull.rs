//! Incremental convex hull over exact integer coordinates.
//!
//! Degeneracies are removed symbolically: point i is treated as
//! p_i + ε·γ(i) with γ(i) = ((i+1), (i+1)², ..., (i+1)^D) on the moment
//! curve. Orientation tests expand the determinant in powers of ε and take
//! the first nonzero coefficient; the top coefficient is a Vandermonde
//! determinant, so the perturbed test never returns zero and the incremental
//! algorithm runs without special cases. True (unperturbed) facets are
//! recovered afterwards by grouping simplicial facets onto their exact
//! supporting hyperplanes.
//!
//! Points must be pairwise distinct and are identified by their index, which
//! doubles as the perturbation index; callers that want input-order
//! independence must sort points before building.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::GeometryError;
use crate::linalg::{bareiss_det, dot_int, sub_int};
use crate::rational::Rational;

/// A maximal true facet of the lower hull: its exact supporting hyperplane
/// (integer, gcd-reduced, outward) and every input point lying on it.
pub(crate) struct LowerCellInt {
    pub vertex_ids: Vec<usize>,
    /// Outward normal restricted to the base space (last coordinate dropped),
    /// rescaled so the lift coordinate's coefficient is -1: the plane reads
    /// `normal · x_base - x_lift = offset`... kept instead in raw integer
    /// form: `normal · x = offset` over all D coordinates, `normal[D-1] < 0`.
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

/// Full hull description used for cell polytopes: merged facet vertex sets
/// plus the exact volume.
pub(crate) struct HullOfPoints {
    pub facet_vertex_sets: Vec<Vec<usize>>,
    pub volume: Rational,
}

/// γ(i) without its zeroth power: ((i+1), (i+1)², ..., (i+1)^dim).
fn moment_row(index: usize, dim: usize) -> Vec<BigInt> {
    let base = BigInt::from(index as u64 + 1);
    let mut row = Vec::with_capacity(dim);
    let mut acc = BigInt::from(1);
    for _ in 0..dim {
        acc *= &base;
        row.push(acc.clone());
    }
    row
}

struct HullContext<'a> {
    dim: usize,
    pts: &'a [Vec<BigInt>],
    gammas: Vec<Vec<BigInt>>,
}

struct SimplicialFacet {
    verts: Vec<usize>,
    alive: bool,
}

impl<'a> HullContext<'a> {
    fn new(pts: &'a [Vec<BigInt>]) -> Self {
        let dim = pts[0].len();
        let gammas = (0..pts.len()).map(|i| moment_row(i, dim)).collect();
        HullContext { dim, pts, gammas }
    }

    /// Orientation of the perturbed simplex `vs` (dim+1 point indices):
    /// sign of det over rows (p_k − p_0) + ε(γ_k − γ_0), k = 1..=dim, as
    /// ε → 0⁺. Never returns 0 for distinct indices.
    fn orient_perturbed(&self, vs: &[usize]) -> i32 {
        let d = self.dim;
        debug_assert_eq!(vs.len(), d + 1);
        let rows_p: Vec<Vec<BigInt>> = (1..=d)
            .map(|k| sub_int(&self.pts[vs[k]], &self.pts[vs[0]]))
            .collect();
        let rows_g: Vec<Vec<BigInt>> = (1..=d)
            .map(|k| sub_int(&self.gammas[vs[k]], &self.gammas[vs[0]]))
            .collect();
        // Coefficient of ε^m: sum over all choices of m rows taken from the
        // γ part. The m = dim coefficient is a Vandermonde determinant of
        // distinct positive integers, hence nonzero.
        for m in 0..=d {
            let mut coeff = BigInt::zero();
            for mask in 0u32..(1 << d) {
                if mask.count_ones() as usize != m {
                    continue;
                }
                let mat: Vec<Vec<BigInt>> = (0..d)
                    .map(|k| {
                        if mask & (1 << k) != 0 {
                            rows_g[k].clone()
                        } else {
                            rows_p[k].clone()
                        }
                    })
                    .collect();
                coeff += bareiss_det(&mat);
            }
            if !coeff.is_zero() {
                return if coeff.is_positive() { 1 } else { -1 };
            }
        }
        unreachable!("moment-curve perturbation cannot vanish on distinct indices");
    }

    /// Returns facets oriented so that `orient_perturbed(verts + [w])` is +1
    /// for any perturbed-interior witness w.
    fn build(&self) -> Vec<SimplicialFacet> {
        let d = self.dim;
        let n = self.pts.len();
        debug_assert!(n >= d + 1);
        let mut facets: Vec<SimplicialFacet> = Vec::new();
        // Initial simplex: the first d+1 points (affinely independent after
        // perturbation); each of its d+1 faces uses the omitted vertex as the
        // interior witness.
        for omit in 0..=d {
            let mut verts: Vec<usize> = (0..=d).filter(|&v| v != omit).collect();
            let mut probe = verts.clone();
            probe.push(omit);
            if self.orient_perturbed(&probe) < 0 {
                verts.swap(0, 1);
            }
            facets.push(SimplicialFacet { verts, alive: true });
        }
        for q in d + 1..n {
            // A facet sees q when q is on its strict outside.
            let visible: Vec<usize> = (0..facets.len())
                .filter(|&f| facets[f].alive)
                .filter(|&f| {
                    let mut probe = facets[f].verts.clone();
                    probe.push(q);
                    self.orient_perturbed(&probe) < 0
                })
                .collect();
            if visible.is_empty() {
                continue;
            }
            // Horizon ridges appear in exactly one visible facet; ridges
            // interior to the visible region appear in two.
            let mut ridges: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
            for &f in &visible {
                for drop in 0..d {
                    let mut ridge = facets[f].verts.clone();
                    let apex = ridge.remove(drop);
                    ridge.sort_unstable();
                    match ridges.entry(ridge) {
                        Entry::Occupied(mut e) => e.get_mut().0 += 1,
                        Entry::Vacant(e) => {
                            e.insert((1, apex));
                        }
                    }
                }
            }
            for &f in &visible {
                facets[f].alive = false;
            }
            for (ridge, (count, apex)) in ridges {
                if count != 1 {
                    debug_assert_eq!(count, 2, "ridge shared by more than two visible facets");
                    continue;
                }
                // The old facet's apex is on the hull side of the new facet's
                // plane, so it serves as the interior witness.
                let mut verts = ridge;
                verts.push(q);
                let mut probe = verts.clone();
                probe.push(apex);
                if self.orient_perturbed(&probe) < 0 {
                    verts.swap(0, 1);
                }
                facets.push(SimplicialFacet { verts, alive: true });
            }
        }
        facets.retain(|f| f.alive);
        facets
    }
}

/// Exact supporting hyperplane of the points `verts` as `(normal, offset)`
/// with `normal · x = offset`, or None when the vertex set is affinely
/// degenerate (a sliver facet that exists only under perturbation).
fn true_hyperplane(pts: &[Vec<BigInt>], verts: &[usize]) -> Option<(Vec<BigInt>, BigInt)> {
    let d = pts[0].len();
    let edges: Vec<Vec<BigInt>> = (1..d)
        .map(|k| sub_int(&pts[verts[k]], &pts[verts[0]]))
        .collect();
    // normal[j] is the cofactor of column j in the (d-1)×d edge matrix, so
    // that det(edges; y) = normal · y for every row vector y.
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<BigInt>> = edges
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(col, _)| col != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut m = bareiss_det(&minor);
        if (d - 1 + j) % 2 == 1 {
            m = -m;
        }
        normal.push(m);
    }
    if normal.iter().all(|c| c.is_zero()) {
        return None;
    }
    let offset = dot_int(&normal, &pts[verts[0]]);
    debug_assert!(verts.iter().all(|&v| dot_int(&normal, &pts[v]) == offset));
    Some((normal, offset))
}

/// Flips the plane so every point satisfies `normal · x <= offset`, then
/// divides by the gcd of all entries. Returns None when points appear
/// strictly on both sides (not a supporting plane).
fn canonical_outward(
    pts: &[Vec<BigInt>],
    mut normal: Vec<BigInt>,
    mut offset: BigInt,
) -> Option<(Vec<BigInt>, BigInt)> {
    let mut seen_side = 0;
    for p in pts {
        let s = (dot_int(&normal, p) - &offset).sign();
        let s = match s {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        };
        if s == 0 {
            continue;
        }
        if seen_side == 0 {
            seen_side = s;
        } else if seen_side != s {
            return None;
        }
    }
    if seen_side > 0 {
        for c in normal.iter_mut() {
            *c = -std::mem::take(c);
        }
        offset = -offset;
    }
    let g = super::big_gcd(normal.iter().cloned().chain(std::iter::once(offset.clone())));
    if !g.is_zero() && g != BigInt::from(1) {
        for c in normal.iter_mut() {
            *c = &*c / &g;
        }
        offset = &offset / &g;
    }
    Some((normal, offset))
}

/// Affine rank of integer points (dimension of their affine span).
fn affine_rank_int(pts: &[Vec<BigInt>]) -> usize {
    let rows: Vec<Vec<Rational>> = pts[1..]
        .iter()
        .map(|p| {
            sub_int(p, &pts[0])
                .into_iter()
                .map(Rational::from_integer)
                .collect()
        })
        .collect();
    crate::linalg::rank(&rows)
}

/// Merged lower-hull facets of distinct integer points in R^D.
///
/// Requires the base projection (first D−1 coordinates) to affinely span
/// the base space. When the points all lie on one non-vertical hyperplane
/// the whole set is a single cell.
pub(crate) fn lower_facets_int(pts: &[Vec<BigInt>]) -> Result<Vec<LowerCellInt>, GeometryError> {
    let d = pts[0].len();
    debug_assert!(pts.iter().all(|p| p.len() == d));
    if pts.len() < d {
        return Err(GeometryError::WrongPointCount {
            needed: d,
            got: pts.len(),
        });
    }
    let rank = affine_rank_int(pts);
    if rank < d - 1 {
        return Err(GeometryError::NotFullDimensional);
    }
    if rank == d - 1 {
        // Flat configuration: a single cell if its hyperplane is not
        // vertical, otherwise the base projection is degenerate.
        let verts: Vec<usize> = (0..pts.len()).collect();
        let span: Vec<usize> = independent_subset(pts, d - 1);
        let (normal, offset) =
            true_hyperplane_from_edges(pts, &span).ok_or(GeometryError::NotFullDimensional)?;
        if normal[d - 1].is_zero() {
            return Err(GeometryError::NotFullDimensional);
        }
        let (mut normal, mut offset) = (normal, offset);
        if normal[d - 1].is_positive() {
            for c in normal.iter_mut() {
                *c = -std::mem::take(c);
            }
            offset = -offset;
        }
        let g = super::big_gcd(normal.iter().cloned().chain(std::iter::once(offset.clone())));
        if !g.is_zero() && g != BigInt::from(1) {
            for c in normal.iter_mut() {
                *c = &*c / &g;
            }
            offset = &offset / &g;
        }
        return Ok(vec![LowerCellInt {
            vertex_ids: verts,
            normal,
            offset,
        }]);
    }

    let ctx = HullContext::new(pts);
    let facets = ctx.build();
    let mut planes: HashSet<(Vec<BigInt>, BigInt)> = HashSet::new();
    for f in &facets {
        let Some((normal, offset)) = true_hyperplane(pts, &f.verts) else {
            continue;
        };
        let (normal, offset) = canonical_outward(pts, normal, offset)
            .expect("hull facet plane must support the point set");
        if !normal[d - 1].is_negative() {
            continue;
        }
        planes.insert((normal, offset));
    }
    let mut cells: Vec<LowerCellInt> = planes
        .into_iter()
        .map(|(normal, offset)| {
            let vertex_ids: Vec<usize> = (0..pts.len())
                .filter(|&i| dot_int(&normal, &pts[i]) == offset)
                .collect();
            LowerCellInt {
                vertex_ids,
                normal,
                offset,
            }
        })
        .collect();
    cells.sort_by(|a, b| a.vertex_ids.cmp(&b.vertex_ids));
    Ok(cells)
}

/// Picks indices of points whose edge vectors from pts[0] span `want`
/// dimensions.
fn independent_subset(pts: &[Vec<BigInt>], want: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = vec![0];
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 1..pts.len() {
        if rows.len() == want {
            break;
        }
        let cand: Vec<Rational> = sub_int(&pts[i], &pts[0])
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        rows.push(cand);
        if crate::linalg::rank(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Supporting hyperplane through pts[span[0]] with the edge matrix built
/// from the given independent vertex subset (used for flat configurations).
fn true_hyperplane_from_edges(
    pts: &[Vec<BigInt>],
    span: &[usize],
) -> Option<(Vec<BigInt>, BigInt)> {
    true_hyperplane(pts, span)
}

/// True when the affine hull of `subset_ids` is a hyperplane with every
/// point of the set weakly on one side of it.
pub(crate) fn subset_spans_supporting_plane(
    points: &[super::Point],
    subset_ids: &[usize],
) -> bool {
    let d = points[0].dim();
    if subset_ids.len() < d {
        return false;
    }
    let (pts, _) = super::scale_to_integers(points);
    let subset: Vec<Vec<BigInt>> = subset_ids.iter().map(|&i| pts[i].clone()).collect();
    if affine_rank_int(&subset) != d - 1 {
        return false;
    }
    let span_local = independent_subset(&subset, d - 1);
    let span: Vec<usize> = span_local.iter().map(|&k| subset_ids[k]).collect();
    let Some((normal, offset)) = true_hyperplane(&pts, &span) else {
        return false;
    };
    canonical_outward(&pts, normal, offset).is_some()
}

/// Convex hull of full-dimensional rational points: merged facet vertex sets
/// and exact volume.
pub(crate) fn hull_of_points(points: &[Vec<Rational>]) -> Result<HullOfPoints, GeometryError> {
    let d = points[0].len();
    if points.len() < d + 1 {
        return Err(GeometryError::NotFullDimensional);
    }
    let as_points: Vec<super::Point> = points
        .iter()
        .map(|c| super::Point::new(c.clone()))
        .collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| as_points[i].cmp(&as_points[j]));
    for w in order.windows(2) {
        if as_points[w[0]] == as_points[w[1]] {
            return Err(GeometryError::DuplicatePoints(
                w[0].min(w[1]),
                w[0].max(w[1]),
            ));
        }
    }
    let sorted: Vec<super::Point> = order.iter().map(|&i| as_points[i].clone()).collect();
    let (pts, scale) = super::scale_to_integers(&sorted);
    if affine_rank_int(&pts) < d {
        return Err(GeometryError::NotFullDimensional);
    }

    // One dimension: the hull is the segment between the extremes and each
    // facet is a single endpoint, below what the facet machinery handles.
    if d == 1 {
        let lo = order[0];
        let hi = order[order.len() - 1];
        let volume = &points[hi][0] - &points[lo][0];
        let mut facet_vertex_sets = vec![vec![lo], vec![hi]];
        facet_vertex_sets.sort();
        return Ok(HullOfPoints {
            facet_vertex_sets,
            volume,
        });
    }

    let ctx = HullContext::new(&pts);
    let facets = ctx.build();

    // Volume: pyramids from the centroid over all simplicial facets. With
    // s = Σ p_i and n = #points, det over rows (n·v_k − s) equals
    // n^d · det(v_k − centroid); slivers contribute zero.
    let n_big = BigInt::from(pts.len() as u64);
    let mut s = vec![BigInt::zero(); d];
    for p in &pts {
        for (j, c) in p.iter().enumerate() {
            s[j] += c;
        }
    }
    let mut vol_sum = BigInt::zero();
    let mut planes: HashSet<(Vec<BigInt>, BigInt)> = HashSet::new();
    for f in &facets {
        let rows: Vec<Vec<BigInt>> = f
            .verts
            .iter()
            .map(|&v| {
                pts[v]
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c * &n_big - &s[j])
                    .collect()
            })
            .collect();
        vol_sum += bareiss_det(&rows).abs();
        if let Some((normal, offset)) = true_hyperplane(&pts, &f.verts) {
            let plane = canonical_outward(&pts, normal, offset)
                .expect("hull facet plane must support the point set");
            planes.insert(plane);
        }
    }
    let mut factorial = BigInt::from(1);
    for k in 1..=d {
        factorial *= BigInt::from(k as u64);
    }
    let denom = factorial * n_big.pow(d as u32) * scale.pow(d as u32);
    let volume = Rational::new(vol_sum, denom);

    let mut facet_vertex_sets: Vec<Vec<usize>> = planes
        .into_iter()
        .map(|(normal, offset)| {
            let mut ids: Vec<usize> = (0..pts.len())
                .filter(|&i| dot_int(&normal, &pts[i]) == offset)
                .map(|i| order[i])
                .collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    facet_vertex_sets.sort();
    Ok(HullOfPoints {
        facet_vertex_sets,
        volume,
    })
}
