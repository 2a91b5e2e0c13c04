//! Slow reference implementations used to cross-check the main algorithms
//! in tests. Each routine takes the most direct route available and shares
//! as little code as possible with the fast paths: subdivision cells come
//! from explicit circumsphere emptiness tests over all point subsets rather
//! than from any convex hull, and the Diophantine searches are plain double
//! loops.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::geometry::{circumsphere, dist_squared, Point};

/// Every locally maximal empty-sphere cell of `points`, as sorted vertex
/// index lists: for each (d+1)-subset with a circumsphere, check that no
/// point is strictly inside and collect all points exactly on it.
/// O(n^(d+2)) and independent of the lifted-hull construction.
pub fn delaunay_cells_bruteforce(points: &[Point]) -> Vec<Vec<usize>> {
    let dim = match points.first() {
        Some(p) => p.dim(),
        None => return Vec::new(),
    };
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut subset: Vec<usize> = Vec::new();
    enumerate_subsets(points.len(), dim + 1, 0, &mut subset, &mut |ids| {
        let simplex: Vec<Point> = ids.iter().map(|&i| points[i].clone()).collect();
        let Ok(sphere) = circumsphere(&simplex) else {
            return;
        };
        let mut on_sphere = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let d2 = dist_squared(&p.coords, &sphere.center.coords);
            if d2 < sphere.radius_squared {
                return;
            }
            if d2 == sphere.radius_squared {
                on_sphere.push(i);
            }
        }
        cells.insert(on_sphere);
    });
    cells.into_iter().collect()
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if current.len() == k {
        visit(current);
        return;
    }
    let remaining = k - current.len();
    for i in start..=n.saturating_sub(remaining) {
        current.push(i);
        enumerate_subsets(n, k, i + 1, current, visit);
        current.pop();
    }
}

/// All integer solutions of q·x³ + y³ = 1 with |x|, |y| ≤ bound, found by
/// solving for y at every x via an exact cube root.
pub fn pell_solutions_bruteforce(q: u64, bound: u64) -> Vec<(BigInt, BigInt)> {
    let q = BigInt::from(q);
    let bound_big = BigInt::from(bound);
    let mut out = Vec::new();
    let mut x = -bound_big.clone();
    while x <= bound_big {
        let rhs = BigInt::one() - &q * &x * &x * &x;
        let y = rhs.cbrt();
        if &y * &y * &y == rhs && y.abs() <= bound_big {
            out.push((x.clone(), y));
        }
        x += 1;
    }
    out.sort();
    out
}

/// All integer solutions of x³ + a·x²y + b·xy² + c·y³ = 1 with
/// |x|, |y| ≤ bound, by evaluating the form on every pair.
pub fn thue_solutions_bruteforce(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    bound: u64,
) -> Vec<(BigInt, BigInt)> {
    let bound = bound as i64;
    let mut out = Vec::new();
    for x in -bound..=bound {
        let xb = BigInt::from(x);
        for y in -bound..=bound {
            let yb = BigInt::from(y);
            let v = &xb * &xb * &xb
                + a * &xb * &xb * &yb
                + b * &xb * &yb * &yb
                + c * &yb * &yb * &yb;
            if v.is_one() {
                out.push((xb.clone(), yb));
            }
        }
    }
    out.sort();
    out
}
