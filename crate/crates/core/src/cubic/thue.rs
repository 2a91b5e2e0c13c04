//! Monic binary cubic Thue equations x³ + ax²y + bxy² + cy³ = 1 with
//! negative discriminant.
//!
//! The bounded solver walks x and extracts the integer roots in y of the
//! remaining cubic exactly: the y-axis splits at the stationary points
//! (floored exactly, square roots and all) into at most three monotone
//! runs, and each run is binary searched on the sign of the cubic. Forms
//! x³ ± qy³ = 1 are irreducible exactly when q is not a cube, and those
//! are delegated to the unit machinery instead of searched.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::units::{solve_cubic_pell, DEFAULT_UNIT_BOX};
use super::{CubicError, SolutionMethod, SolutionReport};

/// Default coordinate bound for bounded searches.
pub const DEFAULT_SEARCH_BOUND: i64 = 1_000;

/// f(x,y) = x³ + a·x²y + b·xy² + c·y³, monic in x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThueEquation {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub discriminant: BigInt,
}

impl ThueEquation {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let discriminant = cubic_discriminant(&a, &b, &c);
        ThueEquation {
            a,
            b,
            c,
            discriminant,
        }
    }
}

/// 18abc − 4a³c + a²b² − 4b³ − 27c² for x³ + ax²y + bxy² + cy³; negative
/// exactly when the dehomogenized cubic has one real root.
pub fn cubic_discriminant(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    BigInt::from(18) * a * b * c - BigInt::from(4) * a * a * a * c + a * a * b * b
        - BigInt::from(4) * b * b * b
        - BigInt::from(27) * c * c
}

/// Finds every solution of f(x,y) = 1 with |x|,|y| ≤ `search_bound`, or
/// delegates x³ ± qy³ = 1 to the Pell machinery. Requires an irreducible
/// form of negative discriminant.
pub fn solve_thue(eq: &ThueEquation, search_bound: i64) -> Result<SolutionReport, CubicError> {
    if search_bound < 1 {
        return Err(CubicError::ZeroBound);
    }
    // The discriminant is recomputed so a hand-built struct cannot smuggle
    // a stale value past the check.
    let disc = cubic_discriminant(&eq.a, &eq.b, &eq.c);
    if !disc.is_negative() {
        return Err(CubicError::NonnegativeDiscriminant(disc));
    }
    if let Some(root) = monic_cubic_integer_root(&eq.a, &eq.b, &eq.c) {
        return Err(CubicError::Decomposable { root });
    }

    // x³ + cy³ with |c| ≥ 2 and not a cube: the solutions are read off the
    // fundamental unit of Z[∛|c|] instead of searched.
    if eq.a.is_zero() && eq.b.is_zero() {
        if let Some(q) = eq.c.abs().to_i64() {
            let pell = solve_cubic_pell(q, DEFAULT_UNIT_BOX)?;
            let flip = eq.c.is_negative();
            let solutions: Vec<(i64, i64)> = pell
                .solutions
                .iter()
                .map(|&(px, py)| if flip { (py, -px) } else { (py, px) })
                .collect();
            return Ok(finish_report(
                eq,
                solutions,
                pell.search_bound,
                SolutionMethod::UnitBased,
                pell.unit,
            ));
        }
    }

    let bound = search_bound;
    // Constants of the per-x cubic in y: c·y³ + (bx)·y² + (ax²)·y + x³ − 1.
    // Its stationary points sit at x(−b ± √(b²−3ac)) / (3c).
    let stationary_disc = &eq.b * &eq.b - BigInt::from(3) * &eq.a * &eq.c;
    let three_c = BigInt::from(3) * &eq.c;
    let use_i128 = {
        let side = BigInt::from(bound) + 1;
        let weight = eq.a.abs() + eq.b.abs() + eq.c.abs() + 1;
        &side * &side * &side * weight * 4 < BigInt::from(i128::MAX)
    };

    let mut sols: BTreeSet<(i64, i64)> = BTreeSet::new();
    for x in -bound..=bound {
        let xb = BigInt::from(x);
        let eval = if use_i128 {
            CubicEval::Small {
                l: eq.c.to_i128().expect("checked against i128 range"),
                p: (&eq.b * &xb).to_i128().expect("checked"),
                q: (&eq.a * &xb * &xb).to_i128().expect("checked"),
                r: (x as i128) * (x as i128) * (x as i128) - 1,
            }
        } else {
            CubicEval::Big {
                l: eq.c.clone(),
                p: &eq.b * &xb,
                q: &eq.a * &xb * &xb,
                r: &xb * &xb * &xb - 1,
            }
        };
        let s = &stationary_disc * &xb * &xb;
        for y in cubic_roots_in_range(&eval, &s, &(&eq.b * &xb), &three_c, -bound, bound) {
            sols.insert((x, y));
        }
    }
    Ok(finish_report(
        eq,
        sols.into_iter().collect(),
        bound,
        SolutionMethod::BoundedSearch,
        None,
    ))
}

fn finish_report(
    eq: &ThueEquation,
    mut solutions: Vec<(i64, i64)>,
    search_bound: i64,
    method: SolutionMethod,
    unit: Option<super::UnitCertificate>,
) -> SolutionReport {
    solutions.sort_unstable();
    solutions.dedup();
    for &(x, y) in &solutions {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let value = &x * &x * &x
            + &eq.a * &x * &x * &y
            + &eq.b * &x * &y * &y
            + &eq.c * &y * &y * &y;
        assert!(value.is_one(), "reported pair must satisfy the equation");
    }
    let cap_audit = solutions.len() <= 5;
    SolutionReport {
        solutions,
        search_bound,
        method,
        cap_audit,
        unit,
    }
}

/// Sign evaluator for l·y³ + p·y² + q·y + r, in machine words when the
/// caller has proven they cannot overflow.
enum CubicEval {
    Small { l: i128, p: i128, q: i128, r: i128 },
    Big { l: BigInt, p: BigInt, q: BigInt, r: BigInt },
}

impl CubicEval {
    fn sign_at(&self, y: i64) -> i32 {
        match self {
            CubicEval::Small { l, p, q, r } => {
                let y = y as i128;
                let v = ((l * y + p) * y + q) * y + r;
                (v > 0) as i32 - (v < 0) as i32
            }
            CubicEval::Big { l, p, q, r } => {
                let y = BigInt::from(y);
                let v = ((l * &y + p) * &y + q) * &y + r;
                match v.sign() {
                    num_bigint::Sign::Minus => -1,
                    num_bigint::Sign::NoSign => 0,
                    num_bigint::Sign::Plus => 1,
                }
            }
        }
    }

    fn leading_sign(&self) -> i32 {
        match self {
            CubicEval::Small { l, .. } => (*l > 0) as i32 - (*l < 0) as i32,
            CubicEval::Big { l, .. } => match l.sign() {
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
                num_bigint::Sign::Plus => 1,
            },
        }
    }
}

/// Integer roots of the cubic in [lo, hi]. `s` is the discriminant of the
/// derivative (up to the positive factor 4), `p` its linear and `d` its
/// leading coefficient doubled... precisely: stationary points are
/// (−p ± √s)/d with d = 3·(leading coefficient).
fn cubic_roots_in_range(
    eval: &CubicEval,
    s: &BigInt,
    p: &BigInt,
    d: &BigInt,
    lo: i64,
    hi: i64,
) -> Vec<i64> {
    let dir = eval.leading_sign();
    debug_assert_ne!(dir, 0);
    let mut out = Vec::new();
    if s.is_positive() {
        let neg_p = -p;
        let fa = floor_div_surd(&neg_p, -1, s, d);
        let fb = floor_div_surd(&neg_p, 1, s, d);
        let (m1, m2) = if fa <= fb { (fa, fb) } else { (fb, fa) };
        // Monotone runs: up to floor(t−), then to floor(t+), then on; the
        // middle run bends the other way.
        let m1 = clamp_big(&m1, lo - 1, hi);
        let m2 = clamp_big(&m2, lo - 1, hi);
        for (a, b, seg_dir) in [
            (lo, m1, dir),
            (m1 + 1, m2, -dir),
            (m2 + 1, hi, dir),
        ] {
            if let Some(y) = root_in_segment(eval, a, b, seg_dir) {
                out.push(y);
            }
        }
    } else if let Some(y) = root_in_segment(eval, lo, hi, dir) {
        out.push(y);
    }
    out
}

fn clamp_big(v: &BigInt, lo: i64, hi: i64) -> i64 {
    if *v < BigInt::from(lo) {
        lo
    } else if *v > BigInt::from(hi) {
        hi
    } else {
        v.to_i64().expect("within i64 bounds")
    }
}

/// floor((p + e·√s)/d) computed exactly for s ≥ 0, d ≠ 0, e = ±1: seeded
/// with the integer square root, then corrected by comparing m·d − p
/// against e·√s with sign-aware squaring.
fn floor_div_surd(p: &BigInt, e: i32, s: &BigInt, d: &BigInt) -> BigInt {
    let r = s.sqrt();
    let num = if e > 0 { p + &r } else { p - &r };
    let mut m = num.div_floor(d);
    let le = |m: &BigInt| -> bool {
        let u = m * d - p;
        if d.is_positive() {
            // u ≤ e√s
            if e > 0 {
                u.is_negative() || &u * &u <= *s
            } else {
                !u.is_positive() && &u * &u >= *s
            }
        } else {
            // u ≥ e√s
            if e > 0 {
                !u.is_negative() && &u * &u >= *s
            } else {
                !u.is_negative() || &u * &u <= *s
            }
        }
    };
    while !le(&m) {
        m -= 1;
    }
    while le(&(&m + 1)) {
        m += 1;
    }
    m
}

/// The unique root, if any, of a cubic restricted to a range where it is
/// monotone (increasing after multiplication by `dir`).
fn root_in_segment(eval: &CubicEval, lo: i64, hi: i64, dir: i32) -> Option<i64> {
    if lo > hi {
        return None;
    }
    let s_at = |y: i64| eval.sign_at(y) * dir;
    let slo = s_at(lo);
    if slo == 0 {
        return Some(lo);
    }
    if slo > 0 {
        return None;
    }
    let shi = s_at(hi);
    if shi == 0 {
        return Some(hi);
    }
    if shi < 0 {
        return None;
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match s_at(mid) {
            0 => return Some(mid),
            s if s < 0 => lo = mid,
            _ => hi = mid,
        }
    }
    None
}

/// An integer root of t³ + at² + bt + c, if one exists; this is exactly
/// the monic form's decomposability test. The search range is the Cauchy
/// bound, split into monotone runs like the bounded solver's but walked in
/// big integers since coefficients are unconstrained.
fn monic_cubic_integer_root(a: &BigInt, b: &BigInt, c: &BigInt) -> Option<BigInt> {
    let eval = |t: &BigInt| -> i32 {
        let v = ((t + a) * t + b) * t + c;
        match v.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    };
    let bound = BigInt::one() + a.abs().max(b.abs()).max(c.abs());
    let lo = -&bound;
    let hi = bound.clone();
    let s = a * a - BigInt::from(3) * b;
    let mut segments: Vec<(BigInt, BigInt, i32)> = Vec::new();
    if s.is_positive() {
        let neg_a = -a;
        let three = BigInt::from(3);
        let fa = floor_div_surd(&neg_a, -1, &s, &three);
        let fb = floor_div_surd(&neg_a, 1, &s, &three);
        let (m1, m2) = if fa <= fb { (fa, fb) } else { (fb, fa) };
        let m1 = m1.max(&lo - 1).min(hi.clone());
        let m2 = m2.max(&lo - 1).min(hi.clone());
        segments.push((lo.clone(), m1.clone(), 1));
        segments.push((&m1 + 1, m2.clone(), -1));
        segments.push((&m2 + 1, hi.clone(), 1));
    } else {
        segments.push((lo, hi, 1));
    }
    for (mut lo, mut hi, dir) in segments {
        if lo > hi {
            continue;
        }
        let s_at = |t: &BigInt| eval(t) * dir;
        let slo = s_at(&lo);
        if slo == 0 {
            return Some(lo);
        }
        let shi = s_at(&hi);
        if shi == 0 {
            return Some(hi);
        }
        if slo > 0 || shi < 0 {
            continue;
        }
        while &hi - &lo > BigInt::one() {
            let mid = (&lo + &hi).div_floor(&BigInt::from(2));
            match s_at(&mid) {
                0 => return Some(mid),
                s if s < 0 => lo = mid,
                _ => hi = mid,
            }
        }
    }
    None
}
