//! Delone subdivisions of finite point sets: construction of the tiling by
//! locally maximal empty spheres, sphere growth from a seed, verification of
//! claimed tilings, and (r, R)-set validation over a window.
//!
//! A cell ("L-solid") is the convex hull of all input points lying on one
//! locally maximal empty sphere: no input point is strictly inside the
//! sphere and the points on it affinely span the ambient space. These cells
//! tile the convex hull of the input face to face; cospherical point groups
//! give non-simplicial cells rather than arbitrary triangulations.

mod grow;
mod validate;
mod verify;

pub use grow::grow_empty_sphere;
pub use validate::{validate_delone_set, CoveringWitness, ValidationReport};
pub use verify::{verify_l_tiling, TilingViolation};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::geometry::{
    affine_dim, check_dims, circumsphere, convex_hull_facets, lift_points, lower_hull_cells,
    GeometryError, Point, Sphere,
};
use crate::linalg;
use crate::rational::Rational;

/// A cell of the subdivision: every input point on one locally maximal empty
/// sphere. `vertex_indices` index into the owning tiling's point list.
#[derive(Clone, Debug, PartialEq)]
pub struct LSolid {
    pub vertex_indices: Vec<usize>,
    pub sphere: Sphere,
}

/// A facet record: the sorted point indices spanning the facet and the cells
/// containing it (two for interior facets, one on the boundary).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetShare {
    pub facet: Vec<usize>,
    pub cells: Vec<usize>,
}

/// The full subdivision. Points are stored sorted lexicographically, so the
/// structure is independent of input order.
#[derive(Clone, Debug, PartialEq)]
pub struct LTiling {
    pub dim: usize,
    pub points: Vec<Point>,
    pub cells: Vec<LSolid>,
    pub adjacency: Vec<FacetShare>,
}

/// Axis-aligned box given by two opposite corners.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisBox {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl AxisBox {
    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// Shrinks the box by `margin` on every side.
    pub fn eroded(&self, margin: &Rational) -> AxisBox {
        AxisBox {
            lo: self.lo.iter().map(|l| l + margin).collect(),
            hi: self.hi.iter().map(|h| h - margin).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }
}

/// Parameters for (r, R)-set validation. The covering radius is carried as
/// its square so that exact values like R² = 1/2 stay rational.
#[derive(Clone, Debug, PartialEq)]
pub struct DeloneParams {
    pub packing_radius: Rational,
    pub covering_radius_squared: Rational,
    pub window: AxisBox,
    pub margin: Rational,
}

#[derive(Debug, Error, PartialEq)]
pub enum DeloneError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("seed coincides with input point {0}")]
    SeedCoincidesWithPoint(usize),
    #[error("points do not affinely span the ambient dimension")]
    DegeneratePointSet,
    #[error("empty sphere growth is unbounded (no point stops the sweep)")]
    UnboundedGrowth,
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch (expected {expected}, got {got})")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("window too small for margin (eroded region is empty)")]
    WindowTooSmall,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

/// Builds the subdivision of `points` into locally maximal empty-sphere
/// cells. Needs at least d+1 points affinely spanning dimension d; points
/// must be pairwise distinct.
pub fn build_l_tiling(points: &[Point]) -> Result<LTiling, DeloneError> {
    let dim = check_dims(points)?;
    if points.len() < dim + 1 {
        return Err(GeometryError::WrongPointCount {
            needed: dim + 1,
            got: points.len(),
        }
        .into());
    }
    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort();
    for (i, w) in sorted.windows(2).enumerate() {
        if w[0] == w[1] {
            return Err(GeometryError::DuplicatePoints(i, i + 1).into());
        }
    }
    if affine_dim(&sorted) < dim {
        return Err(DeloneError::DegeneratePointSet);
    }

    let lifted = lift_points(&sorted);
    let hull_cells = lower_hull_cells(&lifted)?;

    let mut cells = Vec::with_capacity(hull_cells.len());
    for hc in &hull_cells {
        let sphere = cell_sphere(&sorted, &hc.vertex_indices)?;
        debug_assert!(hc.vertex_indices.iter().all(|&v| {
            crate::geometry::dist_squared(&sorted[v].coords, &sphere.center.coords)
                == sphere.radius_squared
        }));
        cells.push(LSolid {
            vertex_indices: hc.vertex_indices.clone(),
            sphere,
        });
    }

    let adjacency = cell_adjacency(&sorted, &cells)?;
    Ok(LTiling {
        dim,
        points: sorted,
        cells,
        adjacency,
    })
}

/// Circumsphere of a cell from d+1 affinely independent vertices.
fn cell_sphere(points: &[Point], vertex_ids: &[usize]) -> Result<Sphere, DeloneError> {
    let dim = points[0].dim();
    let verts: Vec<Point> = vertex_ids.iter().map(|&v| points[v].clone()).collect();
    let simplex = independent_simplex(&verts, dim).ok_or(DeloneError::DegeneratePointSet)?;
    Ok(circumsphere(&simplex)?)
}

/// Greedily selects dim+1 affinely independent points.
fn independent_simplex(points: &[Point], dim: usize) -> Option<Vec<Point>> {
    let mut chosen: Vec<Point> = vec![points[0].clone()];
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for p in &points[1..] {
        if chosen.len() == dim + 1 {
            break;
        }
        let cand = linalg::sub(&p.coords, &points[0].coords);
        rows.push(cand);
        if linalg::rank(&rows) == rows.len() {
            chosen.push(p.clone());
        } else {
            rows.pop();
        }
    }
    if chosen.len() == dim + 1 {
        Some(chosen)
    } else {
        None
    }
}

/// Facet records for a list of cells: each cell's polytope facets keyed by
/// their sorted global vertex indices.
fn cell_adjacency(points: &[Point], cells: &[LSolid]) -> Result<Vec<FacetShare>, DeloneError> {
    let mut by_facet: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for facet in cell_facets(points, &cell.vertex_indices)? {
            by_facet.entry(facet).or_default().push(ci);
        }
    }
    Ok(by_facet
        .into_iter()
        .map(|(facet, cells)| FacetShare { facet, cells })
        .collect())
}

/// Facets of one cell's polytope, as sorted global point indices.
fn cell_facets(points: &[Point], vertex_ids: &[usize]) -> Result<Vec<Vec<usize>>, DeloneError> {
    let coords: Vec<Vec<Rational>> = vertex_ids
        .iter()
        .map(|&v| points[v].coords.clone())
        .collect();
    let local = convex_hull_facets(&coords)?;
    Ok(local
        .into_iter()
        .map(|f| {
            let mut global: Vec<usize> = f.into_iter().map(|i| vertex_ids[i]).collect();
            global.sort_unstable();
            global
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn ipt(coords: &[i64]) -> Point {
        Point::from_integers(coords)
    }

    #[test]
    fn unit_square_is_one_cocircular_cell() {
        let pts = vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 1]), ipt(&[1, 1])];
        let t = build_l_tiling(&pts).unwrap();
        assert_eq!(t.cells.len(), 1);
        assert_eq!(t.cells[0].vertex_indices, vec![0, 1, 2, 3]);
        let s = &t.cells[0].sphere;
        assert_eq!(s.center, Point::new(vec![
            parse_rational("1/2").unwrap(),
            parse_rational("1/2").unwrap(),
        ]));
        assert_eq!(s.radius_squared, parse_rational("1/2").unwrap());
        // Four boundary edges, each belonging to the single cell.
        assert_eq!(t.adjacency.len(), 4);
        assert!(t.adjacency.iter().all(|f| f.cells == vec![0]));
    }

    #[test]
    fn tiling_is_input_order_independent() {
        let pts = vec![
            ipt(&[0, 0]),
            ipt(&[3, 1]),
            ipt(&[1, 2]),
            ipt(&[2, -1]),
            ipt(&[-1, 1]),
        ];
        let t1 = build_l_tiling(&pts).unwrap();
        let mut rev = pts.clone();
        rev.reverse();
        let t2 = build_l_tiling(&rev).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn collinear_points_are_rejected() {
        let pts = vec![ipt(&[0, 0]), ipt(&[1, 1]), ipt(&[2, 2]), ipt(&[3, 3])];
        assert_eq!(
            build_l_tiling(&pts).unwrap_err(),
            DeloneError::DegeneratePointSet
        );
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let pts = vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 1]), ipt(&[1, 0])];
        assert!(matches!(
            build_l_tiling(&pts).unwrap_err(),
            DeloneError::Geometry(GeometryError::DuplicatePoints(_, _))
        ));
    }

    #[test]
    fn interior_facets_are_shared_by_two_cells() {
        // 3x3 integer grid: every unit square is cocircular, nine points,
        // four square cells, twelve facets of which four are interior.
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                pts.push(ipt(&[x, y]));
            }
        }
        let t = build_l_tiling(&pts).unwrap();
        assert_eq!(t.cells.len(), 4);
        assert!(t.cells.iter().all(|c| c.vertex_indices.len() == 4));
        let interior = t.adjacency.iter().filter(|f| f.cells.len() == 2).count();
        let boundary = t.adjacency.iter().filter(|f| f.cells.len() == 1).count();
        assert_eq!(interior, 4);
        assert_eq!(boundary, 8);
    }
}
