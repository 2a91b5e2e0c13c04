//! Independent verification of a claimed empty-sphere tiling.
//!
//! The checks certify, from the raw points and claimed cells alone, that the
//! structure is a face-to-face tiling of the convex hull by locally maximal
//! empty spheres: every cell's vertices lie on its sphere, no point is
//! strictly inside any sphere, every cocircular point is listed, cells span
//! the ambient dimension, each cell-polytope facet is shared by exactly two
//! cells or supports the whole point set, and the cell volumes add up to the
//! hull volume exactly (which rules out overlaps, gaps, and duplicated
//! cells). None of this reuses the construction path.

use std::collections::BTreeMap;
use std::cmp::Ordering;

use crate::geometry::{
    affine_dim, dist_squared, hull_of_points, is_supporting_plane, polytope_volume, Point,
};
use crate::rational::Rational;

use super::LTiling;

#[derive(Clone, Debug, PartialEq)]
pub enum TilingViolation {
    /// A cell references a point index that does not exist.
    VertexIndexOutOfRange { cell: usize, index: usize },
    /// Two points of the tiling coincide.
    DuplicatePoint { first: usize, second: usize },
    /// A cell has fewer vertices than a simplex or does not span.
    CellNotFullDimensional { cell: usize },
    /// A listed vertex is not on the cell's sphere.
    VertexOffSphere { cell: usize, point: usize },
    /// Some point lies strictly inside a cell's sphere.
    PointInsideSphere { cell: usize, point: usize },
    /// A point on the sphere is missing from the cell's vertex list.
    CocircularPointMissing { cell: usize, point: usize },
    /// A facet is claimed by more than two cells.
    FacetSharedByMoreThanTwo { facet: Vec<usize> },
    /// A facet of exactly one cell does not lie on the hull boundary.
    InteriorFacetUnmatched { facet: Vec<usize> },
    /// Cell volumes do not sum to the hull volume.
    VolumeMismatch {
        cells_total: Rational,
        hull: Rational,
    },
    /// The same vertex set appears as two different cells.
    DuplicateCell { first: usize, second: usize },
}

/// Checks a claimed tiling and returns every violation found (empty means
/// the tiling is a correct face-to-face empty-sphere subdivision).
pub fn verify_l_tiling(tiling: &LTiling) -> Vec<TilingViolation> {
    let mut out = Vec::new();
    let points = &tiling.points;
    let dim = tiling.dim;
    if points.is_empty() || points.iter().any(|p| p.dim() != dim) {
        // Without a consistent point list nothing else can be checked.
        out.push(TilingViolation::CellNotFullDimensional { cell: 0 });
        return out;
    }

    let mut sorted_ids: Vec<usize> = (0..points.len()).collect();
    sorted_ids.sort_by(|&a, &b| points[a].cmp(&points[b]));
    for w in sorted_ids.windows(2) {
        if points[w[0]] == points[w[1]] {
            out.push(TilingViolation::DuplicatePoint {
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut structurally_sound: Vec<bool> = Vec::with_capacity(tiling.cells.len());
    for (ci, cell) in tiling.cells.iter().enumerate() {
        let mut sound = true;
        for &v in &cell.vertex_indices {
            if v >= points.len() {
                out.push(TilingViolation::VertexIndexOutOfRange { cell: ci, index: v });
                sound = false;
            }
        }
        if sound {
            let verts: Vec<Point> = cell
                .vertex_indices
                .iter()
                .map(|&v| points[v].clone())
                .collect();
            if verts.len() < dim + 1 || affine_dim(&verts) < dim {
                out.push(TilingViolation::CellNotFullDimensional { cell: ci });
                sound = false;
            }
        }
        structurally_sound.push(sound);
        if !sound {
            continue;
        }

        let center = &cell.sphere.center.coords;
        let r2 = &cell.sphere.radius_squared;
        for (pi, p) in points.iter().enumerate() {
            let d2 = dist_squared(&p.coords, center);
            let on_sphere = &d2 == r2;
            let listed = cell.vertex_indices.contains(&pi);
            match d2.cmp(r2) {
                Ordering::Less => out.push(TilingViolation::PointInsideSphere {
                    cell: ci,
                    point: pi,
                }),
                Ordering::Equal if !listed => {
                    out.push(TilingViolation::CocircularPointMissing {
                        cell: ci,
                        point: pi,
                    })
                }
                _ => {}
            }
            if listed && !on_sphere {
                out.push(TilingViolation::VertexOffSphere {
                    cell: ci,
                    point: pi,
                });
            }
        }
    }

    for i in 0..tiling.cells.len() {
        for j in i + 1..tiling.cells.len() {
            if tiling.cells[i].vertex_indices == tiling.cells[j].vertex_indices {
                out.push(TilingViolation::DuplicateCell { first: i, second: j });
            }
        }
    }

    // Face-to-face structure: recompute each sound cell's polytope facets.
    let mut facet_owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut all_sound = true;
    for (ci, cell) in tiling.cells.iter().enumerate() {
        if !structurally_sound[ci] {
            all_sound = false;
            continue;
        }
        let coords: Vec<Vec<Rational>> = cell
            .vertex_indices
            .iter()
            .map(|&v| points[v].coords.clone())
            .collect();
        let Ok(hull) = hull_of_points(&coords) else {
            out.push(TilingViolation::CellNotFullDimensional { cell: ci });
            all_sound = false;
            continue;
        };
        for facet in hull.facet_vertex_sets {
            let mut global: Vec<usize> =
                facet.into_iter().map(|i| cell.vertex_indices[i]).collect();
            global.sort_unstable();
            facet_owners.entry(global).or_default().push(ci);
        }
    }
    for (facet, owners) in &facet_owners {
        match owners.len() {
            1 => {
                if !is_supporting_plane(points, facet) {
                    out.push(TilingViolation::InteriorFacetUnmatched {
                        facet: facet.clone(),
                    });
                }
            }
            2 => {}
            _ => out.push(TilingViolation::FacetSharedByMoreThanTwo {
                facet: facet.clone(),
            }),
        }
    }

    // Volume certificate: cells must fill the hull exactly.
    if all_sound && affine_dim(points) == dim {
        let coords: Vec<Vec<Rational>> = points.iter().map(|p| p.coords.clone()).collect();
        if let Ok(hull_vol) = polytope_volume(&coords) {
            let mut total = Rational::from_integer(0.into());
            for cell in &tiling.cells {
                let cell_coords: Vec<Vec<Rational>> = cell
                    .vertex_indices
                    .iter()
                    .map(|&v| points[v].coords.clone())
                    .collect();
                if let Ok(v) = polytope_volume(&cell_coords) {
                    total += v;
                }
            }
            if total != hull_vol {
                out.push(TilingViolation::VolumeMismatch {
                    cells_total: total,
                    hull: hull_vol,
                });
            }
        }
    }

    out
}
