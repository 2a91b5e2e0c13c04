//! Arithmetic of Z[ρ], ρ = ∛q: elements a + bρ + cρ² multiply by reducing
//! ρ³ to q, and the norm form decides every order comparison exactly
//! because only one embedding of the ring is real.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::CubicError;

/// a + b·ρ + c·ρ² with ρ³ = q. The radicand travels with the element so
/// mixed-ring products can be rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureCubicInteger {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub q: BigInt,
}

impl PureCubicInteger {
    /// Requires a radicand that is not a perfect cube, so that 1, ρ, ρ²
    /// are genuinely independent.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        q: impl Into<BigInt>,
    ) -> Result<Self, CubicError> {
        let q = q.into();
        if is_perfect_cube(&q) {
            return Err(CubicError::PerfectCube { q });
        }
        Ok(PureCubicInteger {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            q,
        })
    }

    pub fn is_binomial(&self) -> bool {
        self.c.is_zero()
    }

    /// Float image under ρ ↦ real cube root of q. Display only; decisions
    /// go through norms.
    pub fn real_value(&self) -> f64 {
        let rho = big_to_f64(&self.q).cbrt();
        big_to_f64(&self.a) + big_to_f64(&self.b) * rho + big_to_f64(&self.c) * rho * rho
    }
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

pub(crate) fn is_perfect_cube(n: &BigInt) -> bool {
    let r = n.cbrt();
    &r * &r * &r == *n
}

/// Product in Z[ρ], reducing by ρ³ = q.
pub fn cubic_multiply(
    u: &PureCubicInteger,
    v: &PureCubicInteger,
) -> Result<PureCubicInteger, CubicError> {
    if u.q != v.q {
        return Err(CubicError::RadicandMismatch {
            left: u.q.clone(),
            right: v.q.clone(),
        });
    }
    let q = &u.q;
    Ok(PureCubicInteger {
        a: &u.a * &v.a + q * (&u.b * &v.c + &u.c * &v.b),
        b: &u.a * &v.b + &u.b * &v.a + q * (&u.c * &v.c),
        c: &u.a * &v.c + &u.c * &v.a + &u.b * &v.b,
        q: q.clone(),
    })
}

/// N(a + bρ + cρ²) = a³ + q·b³ + q²·c³ − 3q·abc, the product over the three
/// embeddings. Multiplicative, and its sign is the sign of the element's
/// real image: the other two embeddings are complex conjugates.
pub fn cubic_norm(u: &PureCubicInteger) -> BigInt {
    let q = &u.q;
    &u.a * &u.a * &u.a + q * (&u.b * &u.b * &u.b) + q * q * (&u.c * &u.c * &u.c)
        - 3 * q * (&u.a * &u.b * &u.c)
}

/// Difference of two elements of the same ring (caller has checked q).
pub(crate) fn sub_same_ring(u: &PureCubicInteger, v: &PureCubicInteger) -> PureCubicInteger {
    debug_assert_eq!(u.q, v.q);
    PureCubicInteger {
        a: &u.a - &v.a,
        b: &u.b - &v.b,
        c: &u.c - &v.c,
        q: u.q.clone(),
    }
}

/// Exact sign of the real image of u (+1, 0 or -1), read off the norm.
pub(crate) fn real_sign(u: &PureCubicInteger) -> i32 {
    match cubic_norm(u).sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}
