//! Exact enumeration of lattice points in ellipsoids: all v in Z^d with
//! Q[v - center] bounded, for a positive definite rational form and a
//! rational center.
//!
//! Uses the LDLᵀ decomposition to bound one coordinate at a time from the
//! last to the first. The per-coordinate interval endpoints are of the form
//! r ± sqrt(s); they are located by a float estimate and then corrected with
//! exact rational comparisons, so the enumeration is exact.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{LatticeError, QuadraticForm};
use crate::rational::{to_f64, Rational};

/// Hard cap on returned points; forms in the supported dimensions stay far
/// below it, and hitting it signals a runaway radius.
const ENUMERATION_CAP: usize = 2_000_000;

/// All integer vectors v with Q[v - center] <= bound (strict = false) or
/// Q[v - center] < bound (strict = true), in lexicographic order.
pub(crate) fn points_in_ellipsoid(
    form: &QuadraticForm,
    center: &[Rational],
    bound: &Rational,
    strict: bool,
) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    let d = form.dim();
    debug_assert_eq!(center.len(), d);
    if bound.is_negative() {
        return Ok(Vec::new());
    }
    let (diag, l) = form.ldlt().ok_or(LatticeError::NotPositiveDefinite)?;

    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut v = vec![BigInt::zero(); d];
    descend(
        form, center, bound, strict, &diag, &l, d, &mut v, bound.clone(), &mut out,
    )?;
    out.sort();
    Ok(out)
}

/// Recursive layer for coordinate `level - 1`: `remaining` is the bound left
/// after the terms of coordinates `level..d`.
#[allow(clippy::too_many_arguments)]
fn descend(
    form: &QuadraticForm,
    center: &[Rational],
    bound: &Rational,
    strict: bool,
    diag: &[Rational],
    l: &[Vec<Rational>],
    level: usize,
    v: &mut Vec<BigInt>,
    remaining: Rational,
    out: &mut Vec<Vec<BigInt>>,
) -> Result<(), LatticeError> {
    if level == 0 {
        let w: Vec<Rational> = v
            .iter()
            .zip(center)
            .map(|(vi, ci)| Rational::from_integer(vi.clone()) - ci)
            .collect();
        let q = form.eval(&w);
        let inside = if strict { &q < bound } else { &q <= bound };
        if inside {
            if out.len() == ENUMERATION_CAP {
                return Err(LatticeError::EnumerationTooLarge);
            }
            out.push(v.clone());
        }
        return Ok(());
    }
    let i = level - 1;
    if remaining.is_negative() {
        return Ok(());
    }
    // The term for coordinate i is diag[i] * (w_i + s_i)^2 with
    // w_i = v_i - center_i and s_i depending on the deeper coordinates.
    let mut s = Rational::zero();
    for j in i + 1..v.len() {
        let wj = Rational::from_integer(v[j].clone()) - &center[j];
        s += &l[i][j] * wj;
    }
    // |v_i - t| <= sqrt(remaining / diag[i]) with t = center_i - s.
    let t = &center[i] - &s;
    let radius2 = &remaining / &diag[i];
    let lo = ceil_of_diff(&t, &radius2);
    let hi = floor_of_sum(&t, &radius2);
    let mut vi = lo;
    while vi <= hi {
        let wi = Rational::from_integer(vi.clone()) - &center[i];
        let inner = &wi + &s;
        let term = &diag[i] * &inner * &inner;
        v[i] = vi.clone();
        descend(
            form,
            center,
            bound,
            strict,
            diag,
            l,
            i,
            v,
            &remaining - term,
            out,
        )?;
        vi += 1;
    }
    v[i] = BigInt::zero();
    Ok(())
}

/// Largest integer k with k <= t + sqrt(s2), for rational t and s2 >= 0:
/// float estimate corrected by exact comparisons.
fn floor_of_sum(t: &Rational, s2: &Rational) -> BigInt {
    let guess = (to_f64(t) + to_f64(s2).max(0.0).sqrt()).floor();
    let mut k = if guess.is_finite() && guess.abs() < 9e15 {
        BigInt::from(guess as i64)
    } else {
        // Float overflow fallback: an integer overestimate within two of the
        // true endpoint, fixed up by the exact loops below.
        t.floor().to_integer() + crate::rational::ceil_sqrt(s2) + 1
    };
    let le = |k: &BigInt| -> bool {
        // k <= t + sqrt(s2)  <=>  k - t <= sqrt(s2)
        let diff = Rational::from_integer(k.clone()) - t;
        if !diff.is_positive() {
            return true;
        }
        &diff * &diff <= *s2
    };
    while le(&(&k + 1)) {
        k += 1;
    }
    while !le(&k) {
        k -= 1;
    }
    k
}

/// Smallest integer k with k >= t - sqrt(s2).
fn ceil_of_diff(t: &Rational, s2: &Rational) -> BigInt {
    -floor_of_sum(&-t.clone(), s2)
}
