//! Validation of the packing and covering conditions of a finite point set
//! over a window.
//!
//! Packing: every pair of points is at distance at least 2r. Covering: every
//! location in the margin-eroded window lies within R of some point. The
//! covering check is exact and certificate-producing. The farthest location
//! from the point set over a box attains its distance at a point pinned by
//! equidistance constraints together with box-face constraints; every such
//! active point group lies on an empty sphere and is therefore contained in
//! some cell of the empty-sphere subdivision. So it suffices to test cell
//! circumcenters inside the region, equidistant points of small vertex
//! subsets restricted to each box face, and the region's corners.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{build_l_tiling, AxisBox, DeloneError, DeloneParams};
use crate::geometry::{check_dims, dist_squared, Point};
use crate::linalg;
use crate::rational::Rational;

/// A location in the eroded window farther than R from every input point.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringWitness {
    pub location: Point,
    pub distance_squared: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub dim: usize,
    pub packing_ok: bool,
    /// Index pairs closer than 2r.
    pub packing_violations: Vec<(usize, usize)>,
    pub covering_ok: bool,
    pub covering_witnesses: Vec<CoveringWitness>,
    /// The region over which covering was certified.
    pub eroded_window: AxisBox,
}

/// Checks the packing condition (pairwise distances at least 2r) and the
/// covering condition (every location of the eroded window within R of the
/// set), both exactly.
pub fn validate_delone_set(
    points: &[Point],
    params: &DeloneParams,
) -> Result<ValidationReport, DeloneError> {
    let dim = check_dims(points)?;
    if !(params.packing_radius > Rational::zero()) {
        return Err(DeloneError::BadParameter(
            "packing radius must be positive".into(),
        ));
    }
    if !(params.covering_radius_squared > Rational::zero()) {
        return Err(DeloneError::BadParameter(
            "squared covering radius must be positive".into(),
        ));
    }
    if params.margin < Rational::zero() {
        return Err(DeloneError::BadParameter("margin must be nonnegative".into()));
    }
    if &params.margin * &params.margin < params.covering_radius_squared {
        return Err(DeloneError::BadParameter(
            "margin must be at least the covering radius".into(),
        ));
    }
    if params.window.dim() != dim || params.window.lo.len() != params.window.hi.len() {
        return Err(DeloneError::DimensionMismatch {
            expected: dim,
            got: params.window.dim(),
        });
    }
    if params.window.is_empty() {
        return Err(DeloneError::BadParameter(
            "window corners are out of order".into(),
        ));
    }
    let eroded = params.window.eroded(&params.margin);
    if eroded.is_empty() {
        return Err(DeloneError::WindowTooSmall);
    }

    let four_r2 = Rational::from_integer(4.into())
        * &params.packing_radius
        * &params.packing_radius;
    let mut packing_violations = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if dist_squared(&points[i].coords, &points[j].coords) < four_r2 {
                packing_violations.push((i, j));
            }
        }
    }

    let covering_witnesses =
        covering_witnesses(points, &eroded, &params.covering_radius_squared)?;

    Ok(ValidationReport {
        dim,
        packing_ok: packing_violations.is_empty(),
        packing_violations,
        covering_ok: covering_witnesses.is_empty(),
        covering_witnesses,
        eroded_window: eroded,
    })
}

/// All candidate far locations in `region` with squared distance to the set
/// exceeding `r2_bound`, deduplicated and sorted.
fn covering_witnesses(
    points: &[Point],
    region: &AxisBox,
    r2_bound: &Rational,
) -> Result<Vec<CoveringWitness>, DeloneError> {
    let dim = points[0].dim();
    let tiling = build_l_tiling(points)?;

    let mut candidates: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for cell in &tiling.cells {
        let c = &cell.sphere.center;
        if region.contains(&c.coords) {
            candidates.insert(c.coords.clone());
        }
    }

    // Proper faces of the box: each axis fixed at lo, fixed at hi, or free.
    let mut face_states = vec![0u8; dim];
    loop {
        let free: Vec<usize> = (0..dim).filter(|&a| face_states[a] == 0).collect();
        if free.len() < dim {
            collect_face_candidates(&tiling, region, &face_states, &free, &mut candidates);
        }
        // Advance the mixed-radix counter over {free, lo, hi}^dim.
        let mut a = 0;
        loop {
            if a == dim {
                break;
            }
            face_states[a] += 1;
            if face_states[a] < 3 {
                break;
            }
            face_states[a] = 0;
            a += 1;
        }
        if a == dim {
            break;
        }
    }

    let mut witnesses = Vec::new();
    for cand in candidates {
        let d2 = points
            .iter()
            .map(|p| dist_squared(&cand, &p.coords))
            .min()
            .expect("nonempty point set");
        if &d2 > r2_bound {
            witnesses.push(CoveringWitness {
                location: Point::new(cand),
                distance_squared: d2,
            });
        }
    }
    Ok(witnesses)
}

/// Candidates on one proper box face: locations equidistant from f+1 cell
/// vertices (f the face dimension) with the fixed coordinates of the face,
/// solved exactly and kept when they land inside the face.
fn collect_face_candidates(
    tiling: &super::LTiling,
    region: &AxisBox,
    face_states: &[u8],
    free: &[usize],
    candidates: &mut BTreeSet<Vec<Rational>>,
) {
    let dim = face_states.len();
    let f = free.len();
    let fixed: Vec<(usize, &Rational)> = (0..dim)
        .filter(|&a| face_states[a] != 0)
        .map(|a| {
            (
                a,
                if face_states[a] == 1 {
                    &region.lo[a]
                } else {
                    &region.hi[a]
                },
            )
        })
        .collect();

    if f == 0 {
        let corner: Vec<Rational> = fixed.iter().map(|(_, v)| (*v).clone()).collect();
        candidates.insert(corner);
        return;
    }

    let mut subsets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cell in &tiling.cells {
        for subset in k_subsets(&cell.vertex_indices, f + 1) {
            subsets.insert(subset);
        }
    }

    let two = Rational::from_integer(2.into());
    for subset in subsets {
        let p0 = &tiling.points[subset[0]].coords;
        // Equidistance from p0 and p_i restricted to the face: unknowns are
        // the free coordinates.
        let mut a_rows = Vec::with_capacity(f);
        let mut b = Vec::with_capacity(f);
        for &pi in &subset[1..] {
            let p = &tiling.points[pi].coords;
            let diff = linalg::sub(p, p0);
            let row: Vec<Rational> = free.iter().map(|&j| &two * &diff[j]).collect();
            let mut rhs = linalg::norm_squared(p) - linalg::norm_squared(p0);
            for &(j, v) in &fixed {
                rhs -= &two * &diff[j] * v;
            }
            a_rows.push(row);
            b.push(rhs);
        }
        let Some(sol) = linalg::solve(&a_rows, &b) else {
            continue;
        };
        let mut loc = vec![Rational::zero(); dim];
        for &(j, v) in &fixed {
            loc[j] = v.clone();
        }
        let mut inside = true;
        for (k, &j) in free.iter().enumerate() {
            if sol[k] < region.lo[j] || sol[k] > region.hi[j] {
                inside = false;
                break;
            }
            loc[j] = sol[k].clone();
        }
        if inside {
            candidates.insert(loc);
        }
    }
}

/// All k-element subsets of a sorted index list, in lexicographic order.
fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // Advance the combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn grid(n: i64) -> Vec<Point> {
        let mut pts = Vec::new();
        for x in 0..=n {
            for y in 0..=n {
                pts.push(Point::from_integers(&[x, y]));
            }
        }
        pts
    }

    fn square_params(r_str: &str, r2_str: &str, margin: &str, n: i64) -> DeloneParams {
        DeloneParams {
            packing_radius: r(r_str),
            covering_radius_squared: r(r2_str),
            window: AxisBox {
                lo: vec![r("0"), r("0")],
                hi: vec![r(&n.to_string()), r(&n.to_string())],
            },
            margin: r(margin),
        }
    }

    #[test]
    fn integer_grid_is_a_half_one_over_sqrt2_set() {
        let report =
            validate_delone_set(&grid(4), &square_params("1/2", "1/2", "1", 4)).unwrap();
        assert!(report.packing_ok, "violations: {:?}", report.packing_violations);
        assert!(report.covering_ok, "witnesses: {:?}", report.covering_witnesses);
    }

    #[test]
    fn tight_constants_fail_on_both_sides() {
        let report =
            validate_delone_set(&grid(4), &square_params("51/100", "49/100", "1", 4)).unwrap();
        assert!(!report.packing_ok);
        assert!(!report.covering_ok);
        // The farthest location is a cell center at squared distance 1/2.
        assert!(report
            .covering_witnesses
            .iter()
            .all(|w| w.distance_squared == r("1/2")));
    }

    #[test]
    fn covering_witness_on_window_face() {
        // Points fill only the left half of the window, so the farthest
        // location in the eroded region is pinned to its right edge halfway
        // between two boundary points, at squared distance 1 + 1/4.
        let pts: Vec<Point> = grid(4)
            .into_iter()
            .filter(|p| p.coords[0] <= r("2"))
            .collect();
        let report =
            validate_delone_set(&pts, &square_params("1/2", "1/2", "1", 4)).unwrap();
        assert!(report.packing_ok);
        assert!(!report.covering_ok);
        let max = report
            .covering_witnesses
            .iter()
            .map(|w| w.distance_squared.clone())
            .max()
            .unwrap();
        assert_eq!(max, r("5/4"));
        assert!(report
            .covering_witnesses
            .iter()
            .any(|w| w.location == Point::new(vec![r("3"), r("3/2")])));
    }

    #[test]
    fn hole_in_the_grid_breaks_covering() {
        // Punch out the middle column segment of the grid; the largest
        // empty-sphere cells around the hole have squared radius 5/4.
        let pts: Vec<Point> = grid(4)
            .into_iter()
            .filter(|p| p.coords[0] != r("2") || p.coords[1] < r("1") || p.coords[1] > r("3"))
            .collect();
        let report =
            validate_delone_set(&pts, &square_params("1/2", "1/2", "1", 4)).unwrap();
        assert!(report.packing_ok);
        assert!(!report.covering_ok);
        let max = report
            .covering_witnesses
            .iter()
            .map(|w| w.distance_squared.clone())
            .max()
            .unwrap();
        assert_eq!(max, r("5/4"));
    }

    #[test]
    fn margin_below_covering_radius_is_rejected() {
        let err = validate_delone_set(&grid(4), &square_params("1/2", "1/2", "7/10", 4));
        assert!(matches!(err.unwrap_err(), DeloneError::BadParameter(_)));
    }

    #[test]
    fn window_too_small_for_margin() {
        let params = DeloneParams {
            packing_radius: r("1/2"),
            covering_radius_squared: r("1/2"),
            window: AxisBox {
                lo: vec![r("0"), r("0")],
                hi: vec![r("2"), r("2")],
            },
            margin: r("1"),
        };
        // Margin equal to half the window leaves a single-point region,
        // which is still valid.
        let report = validate_delone_set(&grid(2), &params).unwrap();
        assert!(report.covering_ok);
        // A larger margin empties the region entirely.
        let shrunk = DeloneParams {
            margin: r("2"),
            covering_radius_squared: r("4"),
            ..params
        };
        assert_eq!(
            validate_delone_set(&grid(2), &shrunk).unwrap_err(),
            DeloneError::WindowTooSmall
        );
    }

    #[test]
    fn subset_enumeration_is_complete() {
        let subs = k_subsets(&[2, 5, 7, 9], 2);
        assert_eq!(
            subs,
            vec![
                vec![2, 5],
                vec![2, 7],
                vec![2, 9],
                vec![5, 7],
                vec![5, 9],
                vec![7, 9],
            ]
        );
        assert_eq!(k_subsets(&[1, 2], 3), Vec::<Vec<usize>>::new());
    }
}
