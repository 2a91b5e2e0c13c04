//! Small dense exact linear algebra over big integers and rationals.
//!
//! Everything here targets the tiny systems geometry throws up (dimension at
//! most six); no pivoting strategy beyond "first nonzero" is needed for
//! correctness because the arithmetic is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. Exact divisions keep intermediate entries as minors.
pub fn bareiss_det(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(mat.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev; // exact by Sylvester's identity
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

pub fn det_sign(mat: &[Vec<BigInt>]) -> i32 {
    let d = bareiss_det(mat);
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

/// Solves `a x = b` over the rationals by Gaussian elimination.
/// Returns `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=n {
                    let t = &m[r][j] - &factor * &m[col][j];
                    m[r][j] = t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Row rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].clone();
        for j in c..cols {
            m[r][j] = &m[r][j] / &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = &m[i][j] - &factor * &m[r][j];
                    m[i][j] = t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// One nonzero vector orthogonal to all given rows (a null-space sample of
/// the row span), or `None` when the rows span the full space.
pub fn orthogonal_complement_vector(rows: &[Vec<Rational>], dim: usize) -> Option<Vec<Rational>> {
    // Reduce the rows, then read a kernel vector off the echelon form.
    let mut m: Vec<Vec<Rational>> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].clone();
        for j in c..dim {
            m[r][j] = &m[r][j] / &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..dim {
                    let t = &m[i][j] - &factor * &m[r][j];
                    m[i][j] = t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); dim];
    v[free] = Rational::one();
    for (row_idx, &p) in pivots.iter().enumerate() {
        v[p] = -m[row_idx][free].clone();
    }
    Some(v)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn sub_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn norm_squared(a: &[Rational]) -> Rational {
    dot(a, a)
}

/// Orthogonal projection of `x` onto the span of `basis` (not necessarily
/// independent vectors), via the normal equations of a maximal independent
/// subset.
pub fn project_onto_span(basis: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    let dim = x.len();
    // Extract an independent subset first so the Gram system is regular.
    let mut indep: Vec<Vec<Rational>> = Vec::new();
    for v in basis {
        let mut trial = indep.clone();
        trial.push(v.clone());
        if rank(&trial) > indep.len() {
            indep.push(v.clone());
        }
    }
    if indep.is_empty() {
        return vec![Rational::zero(); dim];
    }
    let k = indep.len();
    let gram: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| dot(&indep[i], &indep[j])).collect())
        .collect();
    let rhs: Vec<Rational> = (0..k).map(|i| dot(&indep[i], x)).collect();
    let coeffs = solve(&gram, &rhs).expect("Gram matrix of independent vectors is regular");
    let mut out = vec![Rational::zero(); dim];
    for (c, v) in coeffs.iter().zip(&indep) {
        for (o, vi) in out.iter_mut().zip(v) {
            *o += c * vi;
        }
    }
    out
}
