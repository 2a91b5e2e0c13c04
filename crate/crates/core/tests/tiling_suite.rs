//! End-to-end checks of the empty-sphere tiling pipeline: equivalence with
//! the brute-force oracle on random inputs, the empty-sphere property on
//! every constructed cell, sphere growth, and (r, R) validation thresholds.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use geomnum::bruteforce::delaunay_cells_bruteforce;
use geomnum::delone::{
    build_l_tiling, grow_empty_sphere, validate_delone_set, verify_l_tiling, AxisBox, DeloneError,
    DeloneParams, LTiling,
};
use geomnum::geometry::Point;
use geomnum::Rational;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// n distinct points from the grid {0..=side}^dim scaled by 1/denom.
fn grid_points(rng: &mut ChaCha8Rng, n: usize, dim: usize, side: i64, denom: i64) -> Vec<Point> {
    let mut seen = BTreeSet::new();
    let mut pts = Vec::new();
    while pts.len() < n {
        let cell: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=side)).collect();
        if seen.insert(cell.clone()) {
            pts.push(Point::new(cell.iter().map(|&k| rat(k, denom)).collect()));
        }
    }
    pts
}

fn canonical_cells(t: &LTiling) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = t
        .cells
        .iter()
        .map(|c| {
            let mut v = c.vertex_indices.clone();
            v.sort_unstable();
            v
        })
        .collect();
    cells.sort();
    cells
}

/// Builds the tiling, skipping degenerate draws; panics on any other error.
fn try_tiling(points: &[Point]) -> Option<LTiling> {
    match build_l_tiling(points) {
        Ok(t) => Some(t),
        Err(DeloneError::DegeneratePointSet) => None,
        Err(e) => panic!("unexpected tiling failure: {e}"),
    }
}

#[test]
fn two_dimensional_tilings_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 40 {
        let n = rng.gen_range(4..=20);
        // Alternate integer and half-integer grids; the coarse grid forces
        // plenty of cospherical groups.
        let denom = if done % 2 == 0 { 1 } else { 2 };
        let pts = grid_points(&mut rng, n, 2, 9, denom);
        let Some(t) = try_tiling(&pts) else { continue };
        assert_eq!(canonical_cells(&t), delaunay_cells_bruteforce(&t.points));
        assert_eq!(verify_l_tiling(&t), vec![]);
        done += 1;
    }
}

#[test]
fn three_dimensional_tilings_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut done = 0;
    while done < 10 {
        let n = rng.gen_range(5..=12);
        let pts = grid_points(&mut rng, n, 3, 3, 1);
        let Some(t) = try_tiling(&pts) else { continue };
        assert_eq!(canonical_cells(&t), delaunay_cells_bruteforce(&t.points));
        assert_eq!(verify_l_tiling(&t), vec![]);
        done += 1;
    }
}

#[test]
fn grown_spheres_are_empty_and_span() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut grown = 0;
    for _ in 0..40 {
        let pts = grid_points(&mut rng, 12, 2, 9, 1);
        // Odd numerators over 2 never hit an integer grid point.
        let seed = Point::new(vec![
            rat(2 * rng.gen_range(0..9) + 1, 2),
            rat(2 * rng.gen_range(0..9) + 1, 2),
        ]);
        let solid = match grow_empty_sphere(&pts, &seed) {
            Ok(s) => s,
            Err(DeloneError::UnboundedGrowth | DeloneError::DegeneratePointSet) => continue,
            Err(e) => panic!("unexpected growth failure: {e}"),
        };
        assert!(solid.vertex_indices.len() >= 3);
        for (i, p) in pts.iter().enumerate() {
            let d2 = {
                let diff: Vec<Rational> = p
                    .coords
                    .iter()
                    .zip(&solid.sphere.center.coords)
                    .map(|(a, b)| a - b)
                    .collect();
                diff.iter().map(|x| x * x).sum::<Rational>()
            };
            if solid.vertex_indices.contains(&i) {
                assert_eq!(d2, solid.sphere.radius_squared, "vertex off sphere");
            } else {
                assert!(d2 > solid.sphere.radius_squared, "point inside sphere");
            }
        }
        grown += 1;
    }
    assert!(grown >= 20, "only {grown} seeds produced a sphere");
}

#[test]
fn z2_patch_validation_thresholds() {
    let pts: Vec<Point> = (0..5)
        .flat_map(|x| (0..5).map(move |y| Point::from_integers(&[x, y])))
        .collect();
    let window = AxisBox {
        lo: vec![rat(0, 1), rat(0, 1)],
        hi: vec![rat(4, 1), rat(4, 1)],
    };
    let base = DeloneParams {
        packing_radius: rat(1, 2),
        covering_radius_squared: rat(1, 2),
        window,
        margin: rat(1, 1),
    };

    let report = validate_delone_set(&pts, &base).unwrap();
    assert!(report.packing_ok && report.covering_ok);

    let tight_packing = DeloneParams {
        packing_radius: rat(51, 100),
        ..base.clone()
    };
    let report = validate_delone_set(&pts, &tight_packing).unwrap();
    assert!(!report.packing_ok);
    assert!(report.covering_ok);

    let tight_covering = DeloneParams {
        covering_radius_squared: rat(49, 100),
        ..base
    };
    let report = validate_delone_set(&pts, &tight_covering).unwrap();
    assert!(report.packing_ok);
    assert!(!report.covering_ok);
    for w in &report.covering_witnesses {
        assert!(w.distance_squared > rat(49, 100));
    }
}

fn small_point_sets() -> impl Strategy<Value = Vec<Point>> {
    proptest::collection::btree_set((-6i64..=6, -6i64..=6), 4..=10).prop_map(|s| {
        s.into_iter()
            .map(|(x, y)| Point::from_integers(&[x, y]))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    // The defining property, checked directly rather than through the
    // verifier: every cell's sphere is empty and every claimed vertex is
    // exactly on it.
    #[test]
    fn every_constructed_cell_has_an_empty_sphere(pts in small_point_sets()) {
        let Some(t) = try_tiling(&pts) else { return Ok(()) };
        for cell in &t.cells {
            for (i, p) in t.points.iter().enumerate() {
                let diff: Vec<Rational> = p
                    .coords
                    .iter()
                    .zip(&cell.sphere.center.coords)
                    .map(|(a, b)| a - b)
                    .collect();
                let d2: Rational = diff.iter().map(|x| x * x).sum();
                if cell.vertex_indices.contains(&i) {
                    prop_assert_eq!(&d2, &cell.sphere.radius_squared);
                } else {
                    prop_assert!(d2 > cell.sphere.radius_squared);
                }
            }
        }
        prop_assert_eq!(verify_l_tiling(&t), vec![]);
    }

    #[test]
    fn tilings_are_input_order_independent(pts in small_point_sets(), seed in 0u64..1000) {
        let Some(reference) = try_tiling(&pts) else { return Ok(()) };
        let mut shuffled = pts.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let again = try_tiling(&shuffled).expect("same set, same spans");
        prop_assert_eq!(reference, again);
    }
}
