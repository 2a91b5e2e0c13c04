//! Empty-sphere growth: from a seed location, inflate a sphere until it
//! touches input points whose contact set affinely spans the space.
//!
//! The sweep is exact. Starting from the nearest input points, the center
//! repeatedly moves away from the affine hull of the current contacts along
//! the perpendicular from the center; each leg either acquires a new contact
//! at an exactly computed parameter or runs off to infinity. The radius is
//! strictly increasing and no point ever enters the open ball, so the result
//! is a locally maximal empty sphere through the final contact set.

use num_traits::Zero;

use super::{DeloneError, LSolid};
use crate::geometry::{affine_dim, check_dims, dist_squared, Point, Sphere};
use crate::linalg::{dot, norm_squared, project_onto_span, sub};
use crate::rational::Rational;

/// Grows a locally maximal empty sphere seeded at `seed`. Returns the cell
/// whose vertices (indices into `points`, sorted) are the final contacts.
///
/// Errors when the seed coincides with an input point, when the input does
/// not affinely span its dimension, or when growth escapes to infinity.
pub fn grow_empty_sphere(points: &[Point], seed: &Point) -> Result<LSolid, DeloneError> {
    let dim = check_dims(points)?;
    if seed.dim() != dim {
        return Err(DeloneError::DimensionMismatch {
            expected: dim,
            got: seed.dim(),
        });
    }
    if affine_dim(points) < dim {
        return Err(DeloneError::DegeneratePointSet);
    }

    let mut center: Vec<Rational> = seed.coords.clone();
    let mut r2 = dist_squared(&center, &points[0].coords);
    for (i, p) in points.iter().enumerate() {
        let d2 = dist_squared(&center, &p.coords);
        if d2.is_zero() {
            return Err(DeloneError::SeedCoincidesWithPoint(i));
        }
        if d2 < r2 {
            r2 = d2;
        }
    }
    let mut contacts = contacts_at(points, &center, &r2);

    // Each pass adds at least one contact, so n passes suffice.
    for _ in 0..points.len() {
        let anchor = &points[contacts[0]].coords;
        let edges: Vec<Vec<Rational>> = contacts[1..]
            .iter()
            .map(|&c| sub(&points[c].coords, anchor))
            .collect();
        if crate::linalg::rank(&edges) == dim {
            let sphere = Sphere::new(Point::new(center), r2);
            return Ok(LSolid {
                vertex_indices: contacts,
                sphere,
            });
        }

        let u = growth_direction(&edges, &center, anchor, dim, points);

        // First point hit along center + t*u: for p off the sphere,
        // |c(t) - p|^2 - |c(t) - anchor|^2 = A + t*B with
        // A = |center - p|^2 - r2 > 0 and B = 2 u.(anchor - p);
        // a contact needs t = -A/B > 0, i.e. u.(p - anchor) > 0.
        let mut best_t: Option<Rational> = None;
        for (i, p) in points.iter().enumerate() {
            if contacts.contains(&i) {
                continue;
            }
            let b = Rational::from_integer(2.into()) * dot(&u, &sub(anchor, &p.coords));
            if !(b < Rational::zero()) {
                continue;
            }
            let a = dist_squared(&center, &p.coords) - &r2;
            debug_assert!(a > Rational::zero());
            let t = -a / b;
            if best_t.as_ref().map_or(true, |bt| &t < bt) {
                best_t = Some(t);
            }
        }
        let t = best_t.ok_or(DeloneError::UnboundedGrowth)?;

        for (c, ui) in center.iter_mut().zip(&u) {
            *c += &t * ui;
        }
        let new_r2 = dist_squared(&center, anchor);
        debug_assert!(new_r2 > r2, "sphere radius must grow monotonically");
        r2 = new_r2;
        contacts = contacts_at(points, &center, &r2);
    }
    unreachable!("contact set grows every pass and is bounded by the input size");
}

/// All indices at exact squared distance `r2` from `center`, sorted.
fn contacts_at(points: &[Point], center: &[Rational], r2: &Rational) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| &dist_squared(center, &p.coords) == r2)
        .map(|(i, _)| i)
        .collect()
}

/// Direction perpendicular to the contact flat: the component of
/// (center - anchor) orthogonal to the flat. When the center lies on the
/// flat the perpendicular is ambiguous; take the first coordinate axis with
/// a nonzero perpendicular component, signed toward the point mass so the
/// sweep heads where contacts can exist.
fn growth_direction(
    edges: &[Vec<Rational>],
    center: &[Rational],
    anchor: &[Rational],
    dim: usize,
    points: &[Point],
) -> Vec<Rational> {
    let rel = sub(center, anchor);
    let residual = sub(&rel, &project_onto_span(edges, &rel));
    if !norm_squared(&residual).is_zero() {
        return residual;
    }
    for axis in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[axis] = Rational::from_integer(1.into());
        let res = sub(&e, &project_onto_span(edges, &e));
        if norm_squared(&res).is_zero() {
            continue;
        }
        let mut mass = Rational::zero();
        for p in points {
            mass += dot(&res, &sub(&p.coords, anchor));
        }
        if mass < Rational::zero() {
            return res.into_iter().map(|c| -c).collect();
        }
        return res;
    }
    unreachable!("contact flat is proper, so some axis leaves it");
}
