//! Exact geometric primitives: orientation and in-sphere predicates,
//! circumspheres, the paraboloid lift, and lower convex hulls.
//!
//! All predicates decide signs with arbitrary-precision integer determinants
//! after clearing denominators; no epsilon appears anywhere. The paraboloid
//! lift sends a point p in R^d to (p, |p|²) in R^(d+1); downward-facing
//! facets of the lifted hull project to the Delaunay subdivision of the base
//! points, with cocircular configurations kept as single non-simplicial
//! cells.

mod hull;

pub(crate) use hull::{hull_of_points, lower_facets_int};
pub(crate) use hull::subset_spans_supporting_plane as is_supporting_plane;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg;
use crate::rational::{to_f64, Rational};

/// A point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Point {
    pub coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point {
            coords: coords
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// A sphere with exact center and squared radius; `radius_float` is a display
/// shadow of the exact value.
#[derive(Clone, Debug)]
pub struct Sphere {
    pub center: Point,
    pub radius_squared: Rational,
    pub radius_float: f64,
}

impl Sphere {
    pub fn new(center: Point, radius_squared: Rational) -> Self {
        let radius_float = to_f64(&radius_squared).sqrt();
        Sphere {
            center,
            radius_squared,
            radius_float,
        }
    }
}

impl PartialEq for Sphere {
    fn eq(&self, other: &Self) -> bool {
        self.center == other.center && self.radius_squared == other.radius_squared
    }
}

/// One cell of a lower hull: the input points lying on a common supporting
/// hyperplane `normal · x = offset`, with every input point on the side
/// `normal · x <= offset` and `normal` pointing down (negative last entry).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCell {
    pub vertex_indices: Vec<usize>,
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("operation needs {needed} points, got {got}")]
    WrongPointCount { needed: usize, got: usize },
    #[error("point dimensions disagree (expected {expected}, got {got})")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simplex is affinely degenerate")]
    DegenerateSimplex,
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("points do not affinely span the expected dimension")]
    NotFullDimensional,
    #[error("empty input")]
    EmptyInput,
}

pub(crate) fn check_dims(points: &[Point]) -> Result<usize, GeometryError> {
    let first = points.first().ok_or(GeometryError::EmptyInput)?;
    let dim = first.dim();
    for p in points {
        if p.dim() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
    }
    Ok(dim)
}

/// Scales points by the least common denominator of all coordinates, giving
/// integer coordinates that define the same configuration up to a positive
/// homothety.
pub(crate) fn scale_to_integers(points: &[Point]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut lcm = BigInt::from(1);
    for p in points {
        for c in &p.coords {
            lcm = lcm.lcm(c.denom());
        }
    }
    let scaled = points
        .iter()
        .map(|p| {
            p.coords
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect()
        })
        .collect();
    (scaled, lcm)
}

/// Sign of the d-dimensional orientation determinant of d+1 points:
/// +1 when `det(p1 - p0, ..., pd - p0) > 0` (for d = 2: counterclockwise),
/// 0 when the points are affinely degenerate.
pub fn orientation(simplex: &[Point]) -> Result<i32, GeometryError> {
    let dim = check_dims(simplex)?;
    if simplex.len() != dim + 1 {
        return Err(GeometryError::WrongPointCount {
            needed: dim + 1,
            got: simplex.len(),
        });
    }
    let (pts, _) = scale_to_integers(simplex);
    let rows: Vec<Vec<BigInt>> = (1..=dim)
        .map(|k| linalg::sub_int(&pts[k], &pts[0]))
        .collect();
    Ok(linalg::det_sign(&rows))
}

/// Sign test against the circumsphere of a nondegenerate simplex:
/// +1 when `query` lies strictly inside, 0 on the sphere, −1 strictly
/// outside, independent of the simplex's orientation.
pub fn in_sphere(simplex: &[Point], query: &Point) -> Result<i32, GeometryError> {
    let dim = check_dims(simplex)?;
    if simplex.len() != dim + 1 {
        return Err(GeometryError::WrongPointCount {
            needed: dim + 1,
            got: simplex.len(),
        });
    }
    if query.dim() != dim {
        return Err(GeometryError::DimensionMismatch {
            expected: dim,
            got: query.dim(),
        });
    }
    let mut all: Vec<Point> = simplex.to_vec();
    all.push(query.clone());
    let (pts, _) = scale_to_integers(&all);
    let q = &pts[dim + 1];
    let orient_rows: Vec<Vec<BigInt>> = (1..=dim)
        .map(|k| linalg::sub_int(&pts[k], &pts[0]))
        .collect();
    let orient = linalg::det_sign(&orient_rows);
    if orient == 0 {
        return Err(GeometryError::DegenerateSimplex);
    }
    // Rows (p_i − q, |p_i − q|²); positive determinant means "inside" for a
    // positively oriented simplex.
    let rows: Vec<Vec<BigInt>> = (0..=dim)
        .map(|k| {
            let mut row = linalg::sub_int(&pts[k], q);
            let norm2 = linalg::dot_int(&row, &row);
            row.push(norm2);
            row
        })
        .collect();
    Ok(linalg::det_sign(&rows) * orient)
}

/// Circumsphere of d+1 affinely independent points, solved exactly from the
/// bisector system `2(p_k − p_0)·c = |p_k|² − |p_0|²`.
pub fn circumsphere(simplex: &[Point]) -> Result<Sphere, GeometryError> {
    let dim = check_dims(simplex)?;
    if simplex.len() != dim + 1 {
        return Err(GeometryError::WrongPointCount {
            needed: dim + 1,
            got: simplex.len(),
        });
    }
    let two = Rational::from_integer(2.into());
    let p0 = &simplex[0].coords;
    let n0 = linalg::norm_squared(p0);
    let a: Vec<Vec<Rational>> = (1..=dim)
        .map(|k| {
            linalg::sub(&simplex[k].coords, p0)
                .into_iter()
                .map(|x| &two * x)
                .collect()
        })
        .collect();
    let b: Vec<Rational> = (1..=dim)
        .map(|k| linalg::norm_squared(&simplex[k].coords) - &n0)
        .collect();
    let center = linalg::solve(&a, &b).ok_or(GeometryError::DegenerateSimplex)?;
    let radius_squared = linalg::norm_squared(&linalg::sub(&center, p0));
    Ok(Sphere::new(Point::new(center), radius_squared))
}

/// Lifts p ∈ R^d to (p, |p|²) ∈ R^(d+1).
pub fn lift_to_paraboloid(p: &Point) -> Point {
    let mut coords = p.coords.clone();
    coords.push(linalg::norm_squared(&p.coords));
    Point::new(coords)
}

pub fn lift_points(points: &[Point]) -> Vec<Point> {
    points.iter().map(lift_to_paraboloid).collect()
}

/// Downward-facing facets of the convex hull of points in R^D, merged into
/// maximal cells: coplanar facet patches come back as one cell whose vertex
/// list contains every input point on the supporting hyperplane.
///
/// For lifted inputs this is the Delaunay subdivision of the base points;
/// cocircular base configurations yield one non-simplicial cell. Input
/// points must be distinct, and their projections to the first D−1
/// coordinates must affinely span that base space.
pub fn lower_hull_cells(lifted: &[Point]) -> Result<Vec<HullCell>, GeometryError> {
    let dim = check_dims(lifted)?;
    if lifted.len() < dim {
        return Err(GeometryError::WrongPointCount {
            needed: dim,
            got: lifted.len(),
        });
    }
    // Sort once so both duplicate detection and the symbolic perturbation see
    // a canonical order; cells are reported in input indices.
    let mut order: Vec<usize> = (0..lifted.len()).collect();
    order.sort_by(|&i, &j| lifted[i].cmp(&lifted[j]));
    for w in order.windows(2) {
        if lifted[w[0]] == lifted[w[1]] {
            return Err(GeometryError::DuplicatePoints(
                w[0].min(w[1]),
                w[0].max(w[1]),
            ));
        }
    }
    let sorted: Vec<Point> = order.iter().map(|&i| lifted[i].clone()).collect();
    let (pts, scale) = scale_to_integers(&sorted);

    let cells_int = lower_facets_int(&pts)?;

    let scale_rat = Rational::from_integer(scale);
    let mut cells: Vec<HullCell> = cells_int
        .into_iter()
        .map(|cell| {
            let mut vertex_indices: Vec<usize> =
                cell.vertex_ids.iter().map(|&i| order[i]).collect();
            vertex_indices.sort_unstable();
            let normal: Vec<Rational> = cell
                .normal
                .iter()
                .map(|n| Rational::from_integer(n.clone()))
                .collect();
            let offset = Rational::from_integer(cell.offset) / &scale_rat;
            HullCell {
                vertex_indices,
                normal,
                offset,
            }
        })
        .collect();
    cells.sort_by(|a, b| a.vertex_indices.cmp(&b.vertex_indices));
    Ok(cells)
}

/// Exact volume of the convex hull of full-dimensional rational points.
pub(crate) fn polytope_volume(points: &[Vec<Rational>]) -> Result<Rational, GeometryError> {
    Ok(hull_of_points(points)?.volume)
}

/// Facets of the convex hull of full-dimensional rational points, each facet
/// given as the sorted indices of all points on its supporting hyperplane.
pub(crate) fn convex_hull_facets(points: &[Vec<Rational>]) -> Result<Vec<Vec<usize>>, GeometryError> {
    Ok(hull_of_points(points)?.facet_vertex_sets)
}

/// Squared Euclidean distance between rational coordinate vectors.
pub(crate) fn dist_squared(a: &[Rational], b: &[Rational]) -> Rational {
    linalg::norm_squared(&linalg::sub(a, b))
}

/// Affine dimension of a point set (0 for a single point).
pub(crate) fn affine_dim(points: &[Point]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| linalg::sub(&p.coords, &points[0].coords))
        .collect();
    linalg::rank(&rows)
}

pub(crate) fn big_gcd(values: impl IntoIterator<Item = BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(&v.abs());
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn pt(coords: &[&str]) -> Point {
        Point::new(coords.iter().map(|c| parse_rational(c).unwrap()).collect())
    }

    #[test]
    fn orientation_signs() {
        let ccw = [
            Point::from_integers(&[0, 0]),
            Point::from_integers(&[1, 0]),
            Point::from_integers(&[0, 1]),
        ];
        assert_eq!(orientation(&ccw).unwrap(), 1);
        let cw = [ccw[0].clone(), ccw[2].clone(), ccw[1].clone()];
        assert_eq!(orientation(&cw).unwrap(), -1);
        let flat = [
            Point::from_integers(&[0, 0]),
            Point::from_integers(&[1, 1]),
            Point::from_integers(&[2, 2]),
        ];
        assert_eq!(orientation(&flat).unwrap(), 0);
    }

    #[test]
    fn circumsphere_of_reference_triangle() {
        let simplex = [
            Point::from_integers(&[0, 0]),
            Point::from_integers(&[2, 0]),
            Point::from_integers(&[1, 1]),
        ];
        let s = circumsphere(&simplex).unwrap();
        assert_eq!(s.center, Point::from_integers(&[1, 0]));
        assert_eq!(s.radius_squared, parse_rational("1").unwrap());
        assert!((s.radius_float - 1.0).abs() < 1e-15);
    }

    #[test]
    fn in_sphere_agrees_with_distance_to_circumcenter() {
        let simplex = [
            Point::from_integers(&[0, 0]),
            Point::from_integers(&[2, 0]),
            Point::from_integers(&[1, 1]),
        ];
        let sphere = circumsphere(&simplex).unwrap();
        let queries = [
            pt(&["1", "0"]),
            pt(&["1", "1"]),
            pt(&["3", "3"]),
            pt(&["0", "0"]),
            pt(&["1/2", "-1/3"]),
        ];
        for q in &queries {
            let by_det = in_sphere(&simplex, q).unwrap();
            let d2 = dist_squared(&q.coords, &sphere.center.coords);
            let by_dist = match d2.cmp(&sphere.radius_squared) {
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => -1,
            };
            assert_eq!(by_det, by_dist, "disagree at {q:?}");
        }
        // Flipping the simplex orientation must not flip the answer.
        let flipped = [simplex[0].clone(), simplex[2].clone(), simplex[1].clone()];
        assert_eq!(in_sphere(&flipped, &pt(&["1", "0"])).unwrap(), 1);
    }

    #[test]
    fn in_sphere_rejects_degenerate_simplex() {
        let simplex = [
            Point::from_integers(&[0, 0]),
            Point::from_integers(&[1, 1]),
            Point::from_integers(&[2, 2]),
        ];
        assert_eq!(
            in_sphere(&simplex, &pt(&["0", "1"])),
            Err(GeometryError::DegenerateSimplex)
        );
    }

    #[test]
    fn lift_appends_squared_norm() {
        let p = pt(&["1/2", "1/3"]);
        let lifted = lift_to_paraboloid(&p);
        assert_eq!(lifted.dim(), 3);
        assert_eq!(lifted.coords[2], parse_rational("13/36").unwrap());
    }
}
