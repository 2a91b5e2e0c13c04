//! Delaunay subdivision of a lattice, computed on a finite patch around the
//! origin and certified exactly against the infinite point system.
//!
//! The patch is an ellipsoid of lattice points in reduced coordinates. Its
//! paraboloid-lifted lower hull yields candidate cells around the origin;
//! each translation class is then certified: the circumsphere must contain
//! no lattice point strictly inside and every lattice point exactly on it
//! must be a listed vertex. Both are decided exactly by an integer lifted
//! in-sphere determinant over the patch, which is a complete witness list
//! because each cell touches the origin: any point inside or on the sphere
//! lies within twice the circumradius of the origin, and 4r^2 <= alpha is
//! checked per cell. On top of that the vertices must span, the star must
//! contain one cell per vertex of each class, and the class volumes must
//! sum to 1, which together prove both correctness and completeness of the
//! class list. If any certificate fails the patch radius doubles and the
//! computation retries, so a too-small initial patch can only cost time,
//! never correctness.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::enumerate::points_in_ellipsoid;
use super::{LatticeError, QuadraticForm};
use crate::geometry::{convex_hull_facets, lower_facets_int, polytope_volume, GeometryError};
use crate::linalg;
use crate::rational::{to_f64, Rational};

/// One translation class of Delaunay cells, translated so its
/// lexicographically smallest vertex is the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct DelaunayClass {
    /// Sorted vertex coordinate vectors (lattice coordinates).
    pub vertices: Vec<Vec<BigInt>>,
    /// Circumcenter in the form's metric, lattice coordinates.
    pub center: Vec<Rational>,
    pub radius_squared: Rational,
    /// Cells of this class in the star of the origin (one per vertex).
    pub multiplicity: usize,
    /// Volume in lattice coordinates.
    pub volume: Rational,
}

/// The Delaunay subdivision around the origin, up to lattice translation.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeDelaunay {
    pub dim: usize,
    pub classes: Vec<DelaunayClass>,
    pub covering_radius_squared: Rational,
    pub covering_radius: f64,
    /// Stable hash of the subdivision combinatorics: built from class
    /// shapes and facet adjacency only, so it survives unimodular changes
    /// of basis and rescaling of the form.
    pub l_type_signature: String,
    /// Number of cells meeting the origin.
    pub star_cell_count: usize,
}

/// Computes the certified Delaunay subdivision of the lattice Z^d under the
/// metric of `form`.
pub fn lattice_delaunay(form: &QuadraticForm) -> Result<LatticeDelaunay, LatticeError> {
    let (reduced, u) = form.reduced()?;
    let ut = transpose(&u);

    // Nearest-plane bound: 4R^2 <= sum of the orthogonalized diagonal, so
    // this patch radius contains every vertex of the origin's star and the
    // first pass certifies unless the bound is slack enough to matter
    // (the doubling loop below stays as a safety net).
    let (gso_diag, _) = reduced.ldlt().ok_or(LatticeError::NotPositiveDefinite)?;
    let mut alpha = Rational::zero();
    for e in &gso_diag {
        alpha += e;
    }

    for _ in 0..24 {
        if let Some(result) = try_patch(form, &reduced, &ut, &alpha)? {
            return Ok(result);
        }
        alpha *= Rational::from_integer(2.into());
    }
    Err(LatticeError::CertificationFailed)
}

/// Squared covering radius (exact) and its float shadow.
pub fn covering_radius(form: &QuadraticForm) -> Result<(Rational, f64), LatticeError> {
    let del = lattice_delaunay(form)?;
    Ok((del.covering_radius_squared, del.covering_radius))
}

/// Covering density: volume of a covering ball divided by the covolume,
/// theta = V_d * rho^d / sqrt(det).
pub fn covering_density(form: &QuadraticForm) -> Result<f64, LatticeError> {
    let d = form.dim();
    let (r2, _) = covering_radius(form)?;
    let ratio = pow_rational(&r2, d as u32) / form.det();
    Ok(unit_ball_volume(d) * to_f64(&ratio).sqrt())
}

pub(crate) fn unit_ball_volume(d: usize) -> f64 {
    match d {
        1 => 2.0,
        2 => std::f64::consts::PI,
        3 => 4.0 * std::f64::consts::PI / 3.0,
        4 => std::f64::consts::PI * std::f64::consts::PI / 2.0,
        _ => unreachable!("dimension checked at form construction"),
    }
}

fn pow_rational(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

pub(crate) fn transpose(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    (0..n)
        .map(|j| (0..n).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub(crate) fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| linalg::dot_int(row, v)).collect()
}

/// One star cell as found in the patch, before translation to its class
/// representative frame.
struct StarCell {
    /// Patch indices of the cell's vertices, sorted.
    vert_ids: Vec<usize>,
    /// Translation subtracted to canonicalize, in original coordinates.
    shift: Vec<BigInt>,
}

/// One attempt at the given patch radius; `None` asks for a larger patch.
fn try_patch(
    form: &QuadraticForm,
    reduced: &QuadraticForm,
    ut: &[Vec<BigInt>],
    alpha: &Rational,
) -> Result<Option<LatticeDelaunay>, LatticeError> {
    let d = form.dim();
    let zero_center = vec![Rational::zero(); d];
    let patch = points_in_ellipsoid(reduced, &zero_center, alpha, false)?;
    if patch.len() < d + 2 {
        return Ok(None);
    }

    // Integer scaling of the reduced form; the same scaled values serve as
    // the hull lift and as the lift column of the in-sphere determinants.
    let mut lambda = BigInt::one();
    for row in reduced.entries() {
        for e in row {
            lambda = lambda.lcm(e.denom());
        }
    }
    let lambda_rat = Rational::from_integer(lambda.clone());
    let lifts: Vec<BigInt> = patch
        .iter()
        .map(|w| {
            let q = reduced.eval_int(w) * &lambda_rat;
            debug_assert!(q.denom().is_one());
            q.to_integer()
        })
        .collect();

    // Lower hull of the lifted patch; scaling the lift coordinate by a
    // positive factor does not change which facets face down.
    let lifted: Vec<Vec<BigInt>> = patch
        .iter()
        .zip(&lifts)
        .map(|(w, l)| {
            let mut row = w.clone();
            row.push(l.clone());
            row
        })
        .collect();
    let cells = match lower_facets_int(&lifted) {
        Ok(cells) => cells,
        Err(GeometryError::NotFullDimensional) => return Ok(None),
        Err(GeometryError::WrongPointCount { .. }) => return Ok(None),
        Err(_) => return Err(LatticeError::CertificationFailed),
    };

    let origin = vec![BigInt::zero(); d];
    let Ok(origin_idx) = patch.binary_search(&origin) else {
        return Err(LatticeError::CertificationFailed);
    };

    // Group the origin's cells by translation class; the class key lives in
    // original coordinates, shifted so its lexicographic minimum is 0.
    let mut class_map: BTreeMap<Vec<Vec<BigInt>>, (usize, StarCell)> = BTreeMap::new();
    let mut star_raw: Vec<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> = Vec::new();
    for cell in &cells {
        if !cell.vertex_ids.contains(&origin_idx) {
            continue;
        }
        let orig: Vec<Vec<BigInt>> = cell
            .vertex_ids
            .iter()
            .map(|&i| mat_vec(ut, &patch[i]))
            .collect();
        let shift = orig.iter().min().expect("cell has vertices").clone();
        let mut key: Vec<Vec<BigInt>> = orig
            .iter()
            .map(|v| v.iter().zip(&shift).map(|(c, s)| c - s).collect())
            .collect();
        key.sort();
        let mut set = orig;
        set.sort();
        star_raw.push((set, key.clone()));
        class_map
            .entry(key)
            .and_modify(|(mult, _)| *mult += 1)
            .or_insert_with(|| {
                let mut vert_ids = cell.vertex_ids.clone();
                vert_ids.sort_unstable();
                (1, StarCell { vert_ids, shift })
            });
    }
    if class_map.is_empty() {
        return Ok(None);
    }

    let mut classes = Vec::with_capacity(class_map.len());
    let mut star_cell_count = 0;
    let mut volume_total = Rational::zero();
    for (key, (multiplicity, rep)) in class_map {
        // A complete star contains one translate of the class per vertex.
        if multiplicity != key.len() {
            return Ok(None);
        }
        let Some((center_red, radius_squared, volume)) =
            certify_cell(reduced, &lambda, &patch, &lifts, alpha, &rep.vert_ids)?
        else {
            return Ok(None);
        };
        // Translate the circumcenter to the representative frame: original
        // coordinates, minus the canonicalizing shift.
        let center: Vec<Rational> = (0..d)
            .map(|j| {
                let mut acc = Rational::zero();
                for (i, c) in center_red.iter().enumerate() {
                    acc += c * Rational::from_integer(ut[j][i].clone());
                }
                acc - Rational::from_integer(rep.shift[j].clone())
            })
            .collect();
        star_cell_count += multiplicity;
        volume_total += &volume;
        classes.push(DelaunayClass {
            vertices: key,
            center,
            radius_squared,
            multiplicity,
            volume,
        });
    }
    // Classes tile a fundamental domain exactly once: total volume 1 in
    // lattice coordinates. This certifies that no class is missing.
    if volume_total != Rational::one() {
        return Ok(None);
    }

    let covering_radius_squared = classes
        .iter()
        .map(|c| c.radius_squared.clone())
        .max()
        .expect("at least one class");
    let covering_radius = to_f64(&covering_radius_squared).sqrt();
    let star_sets: Vec<(Vec<Vec<BigInt>>, usize)> = star_raw
        .into_iter()
        .map(|(set, key)| {
            let idx = classes
                .binary_search_by(|c| c.vertices.cmp(&key))
                .expect("every star cell was classified");
            (set, idx)
        })
        .collect();
    let l_type_signature = canonical_signature(&classes, &star_sets)?;
    Ok(Some(LatticeDelaunay {
        dim: d,
        classes,
        covering_radius_squared,
        covering_radius,
        l_type_signature,
        star_cell_count,
    }))
}

fn sgn(x: &BigInt) -> i32 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Certifies one star cell, in place, against the infinite lattice, and
/// returns its circumcenter (reduced coordinates), squared radius and
/// volume. Returns `None` when any certificate fails.
///
/// The cell contains the origin as a vertex, so every lattice point inside
/// or on its circumsphere lies within twice the circumradius of the origin;
/// once 4r^2 <= alpha is checked, the patch is a complete candidate list
/// and emptiness/maximality reduce to an exact in-sphere test per patch
/// point. The test is the lifted determinant
///
///   D(z) = det [ w_0 - z, L(w_0) - L(z) ; w_i - w_0, L(w_i) - L(w_0) ]
///
/// over an affinely independent vertex subset w_0..w_d, with L the
/// integer-scaled form value: D vanishes exactly on the circumsphere and
/// has the sign of (-1)^d det(w_i - w_0) strictly inside. Everything stays
/// in integers, which is what makes the certificate cheap.
fn certify_cell(
    reduced: &QuadraticForm,
    lambda: &BigInt,
    patch: &[Vec<BigInt>],
    lifts: &[BigInt],
    alpha: &Rational,
    vert_ids: &[usize],
) -> Result<Option<(Vec<Rational>, Rational, Rational)>, LatticeError> {
    let d = reduced.dim();
    if vert_ids.len() < d + 1 {
        return Ok(None);
    }
    let base = vert_ids[0];

    // Affinely independent spanning subset of the vertices.
    let mut edges_rat: Vec<Vec<Rational>> = Vec::with_capacity(d);
    let mut simplex: Vec<usize> = Vec::with_capacity(d);
    for &id in &vert_ids[1..] {
        if simplex.len() == d {
            break;
        }
        let e: Vec<Rational> = patch[id]
            .iter()
            .zip(&patch[base])
            .map(|(a, b)| Rational::from_integer(a - b))
            .collect();
        edges_rat.push(e);
        if linalg::rank(&edges_rat) < edges_rat.len() {
            edges_rat.pop();
        } else {
            simplex.push(id);
        }
    }
    if simplex.len() < d {
        return Ok(None);
    }

    // Circumcenter from the integer system 2 (w_k - w_0)^T (lambda A) c =
    // L(w_k) - L(w_0).
    let b_scaled: Vec<Vec<Rational>> = (0..d)
        .map(|i| (0..d).map(|j| reduced.entry(i, j) * Rational::from_integer(lambda.clone())).collect())
        .collect();
    let two = Rational::from_integer(2.into());
    let rows: Vec<Vec<Rational>> = simplex
        .iter()
        .enumerate()
        .map(|(k, _)| {
            (0..d)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for (i, ei) in edges_rat[k].iter().enumerate() {
                        acc += ei * &b_scaled[i][j];
                    }
                    &two * acc
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = simplex
        .iter()
        .map(|&id| Rational::from_integer(&lifts[id] - &lifts[base]))
        .collect();
    let Some(center) = linalg::solve(&rows, &rhs) else {
        return Ok(None);
    };
    let w0: Vec<Rational> = patch[base]
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    let radius_squared = reduced.eval(&linalg::sub(&w0, &center));

    // The patch is only a complete witness list while the sphere fits.
    let four = Rational::from_integer(4.into());
    if &four * &radius_squared > *alpha {
        return Ok(None);
    }

    // Cofactor minors of the edge block (w_i - w_0 | L(w_i) - L(w_0)), one
    // per omitted column; the in-sphere determinant is then linear per
    // query point.
    let edge_block: Vec<Vec<BigInt>> = simplex
        .iter()
        .map(|&id| {
            let mut row: Vec<BigInt> = patch[id]
                .iter()
                .zip(&patch[base])
                .map(|(a, b)| a - b)
                .collect();
            row.push(&lifts[id] - &lifts[base]);
            row
        })
        .collect();
    let minors: Vec<BigInt> = (0..=d)
        .map(|omit| {
            let sub: Vec<Vec<BigInt>> = edge_block
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != omit)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            linalg::bareiss_det(&sub)
        })
        .collect();
    let inside_sign = if d % 2 == 0 { sgn(&minors[d]) } else { -sgn(&minors[d]) };
    debug_assert_ne!(inside_sign, 0, "independent simplex has nonzero edge det");

    let mut on_sphere: Vec<usize> = Vec::with_capacity(vert_ids.len());
    for (idx, z) in patch.iter().enumerate() {
        let mut det = BigInt::zero();
        for (j, minor) in minors.iter().enumerate() {
            let u_j = if j < d {
                &patch[base][j] - &z[j]
            } else {
                &lifts[base] - &lifts[idx]
            };
            if j % 2 == 0 {
                det += u_j * minor;
            } else {
                det -= u_j * minor;
            }
        }
        let s = sgn(&det);
        if s == 0 {
            on_sphere.push(idx);
        } else if s == inside_sign {
            // A lattice point strictly inside: not an empty sphere.
            return Ok(None);
        }
    }
    // Maximality: the points exactly on the sphere are exactly the listed
    // vertices.
    if on_sphere != vert_ids {
        return Ok(None);
    }

    let coords: Vec<Vec<Rational>> = vert_ids
        .iter()
        .map(|&id| {
            patch[id]
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    let Ok(volume) = polytope_volume(&coords) else {
        return Ok(None);
    };

    Ok(Some((center, radius_squared, volume)))
}

/// Canonical, coordinate-free hash of the subdivision combinatorics.
///
/// Base colors carry per-class shape data (vertex count, star
/// multiplicity, lattice volume); color refinement then folds in which
/// class sits across each facet, for as many rounds as there are classes,
/// enough to stabilize. Every ingredient is invariant under unimodular
/// changes of basis and under rescaling the form, so equal subdivision
/// combinatorics give equal signatures no matter how the lattice is
/// presented.
fn canonical_signature(
    classes: &[DelaunayClass],
    star_sets: &[(Vec<Vec<BigInt>>, usize)],
) -> Result<String, LatticeError> {
    // Facet profile per class: (facet vertex count, neighbor class).
    let mut profiles: Vec<Vec<(usize, usize)>> = Vec::with_capacity(classes.len());
    for class in classes {
        let verts: Vec<Vec<Rational>> = class
            .vertices
            .iter()
            .map(|v| v.iter().map(|c| Rational::from_integer(c.clone())).collect())
            .collect();
        let facets =
            convex_hull_facets(&verts).map_err(|_| LatticeError::CertificationFailed)?;
        let mut profile = Vec::with_capacity(facets.len());
        for facet in &facets {
            // Put one facet vertex at the origin; the two cells sharing
            // the facet are then both star cells, and the one that is not
            // this class's own translate names the neighbor class.
            let w = &class.vertices[facet[0]];
            let shifted = translate_sorted(facet.iter().map(|&i| &class.vertices[i]), w);
            let own = translate_sorted(class.vertices.iter(), w);
            let mut neighbor = None;
            for (set, idx) in star_sets {
                if *set != own && contains_sorted(set, &shifted) {
                    neighbor = Some(*idx);
                    break;
                }
            }
            let Some(neighbor) = neighbor else {
                return Err(LatticeError::CertificationFailed);
            };
            profile.push((facet.len(), neighbor));
        }
        profile.sort_unstable();
        profiles.push(profile);
    }

    let mut colors: Vec<String> = classes
        .iter()
        .map(|c| format!("{}.{}.{}", c.vertices.len(), c.multiplicity, c.volume))
        .collect();
    for _ in 0..classes.len() {
        colors = profiles
            .iter()
            .enumerate()
            .map(|(i, profile)| {
                let mut around: Vec<String> = profile
                    .iter()
                    .map(|&(len, j)| format!("{len}~{}", colors[j]))
                    .collect();
                around.sort();
                let folded = format!("{}[{}]", colors[i], around.join(","));
                format!("{:016x}", fnv64(&folded))
            })
            .collect();
    }
    colors.sort();
    Ok(format!("{:016x}", fnv64(&colors.join("|"))))
}

fn translate_sorted<'a>(
    vectors: impl Iterator<Item = &'a Vec<BigInt>>,
    w: &[BigInt],
) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vectors
        .map(|v| v.iter().zip(w).map(|(c, s)| c - s).collect())
        .collect();
    out.sort();
    out
}

/// Is sorted `needle` a subset of sorted `haystack`?
fn contains_sorted(haystack: &[Vec<BigInt>], needle: &[Vec<BigInt>]) -> bool {
    let mut rest = haystack.iter();
    needle.iter().all(|n| rest.any(|h| h == n))
}

/// FNV-1a: stable across processes and platforms, unlike the standard
/// library hasher.
fn fnv64(text: &str) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}
