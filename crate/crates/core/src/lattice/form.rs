//! Positive quadratic forms: construction, evaluation, determinants,
//! positive definiteness, and exact lattice reduction with a tracked
//! unimodular transform.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{LatticeError, MAX_LATTICE_DIM};
use crate::rational::Rational;

/// A symmetric rational matrix interpreted as the quadratic form
/// Q[v] = vᵀ A v on lattice coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    entries: Vec<Vec<Rational>>,
}

impl QuadraticForm {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self, LatticeError> {
        let d = entries.len();
        if d == 0 || d > MAX_LATTICE_DIM {
            return Err(LatticeError::UnsupportedDimension(d));
        }
        if entries.iter().any(|row| row.len() != d) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..d {
            for j in i + 1..d {
                if entries[i][j] != entries[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(QuadraticForm { entries })
    }

    /// Gram matrix B Bᵀ of basis rows.
    pub fn gram_from_basis(basis: &[Vec<Rational>]) -> Result<Self, LatticeError> {
        let d = basis.len();
        if d == 0 || d > MAX_LATTICE_DIM {
            return Err(LatticeError::UnsupportedDimension(d));
        }
        if basis.iter().any(|row| row.len() != d) {
            return Err(LatticeError::BadBasis);
        }
        let entries: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| crate::linalg::dot(&basis[i], &basis[j]))
                    .collect()
            })
            .collect();
        let form = QuadraticForm { entries };
        if form.det().is_zero() {
            return Err(LatticeError::BadBasis);
        }
        Ok(form)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    /// Q[v] for an integer vector.
    pub fn eval_int(&self, v: &[BigInt]) -> Rational {
        let vr: Vec<Rational> = v.iter().map(|c| Rational::from_integer(c.clone())).collect();
        self.eval(&vr)
    }

    /// Q[v] = vᵀ A v.
    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.inner(v, v)
    }

    /// Inner product uᵀ A v.
    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        debug_assert_eq!(u.len(), self.dim());
        debug_assert_eq!(v.len(), self.dim());
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                acc += ui * &self.entries[i][j] * vj;
            }
        }
        acc
    }

    pub fn inner_int(&self, u: &[BigInt], v: &[BigInt]) -> Rational {
        let ur: Vec<Rational> = u.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let vr: Vec<Rational> = v.iter().map(|c| Rational::from_integer(c.clone())).collect();
        self.inner(&ur, &vr)
    }

    pub fn det(&self) -> Rational {
        det_rational(&self.entries)
    }

    /// Cholesky-style LDLᵀ pivots; `None` when some pivot is nonpositive,
    /// which by Sylvester's criterion means the form is not positive
    /// definite. On success Q[v] = Σ d_i (v_i + Σ_{j>i} l[i][j] v_j)².
    pub(crate) fn ldlt(&self) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
        let n = self.dim();
        let mut q = self.entries.clone();
        let mut diag = Vec::with_capacity(n);
        let mut l = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            let pivot = q[i][i].clone();
            if !pivot.is_positive() {
                return None;
            }
            for j in i + 1..n {
                l[i][j] = &q[i][j] / &pivot;
            }
            for k in i + 1..n {
                for m in i + 1..n {
                    let adj = &q[k][i] * &q[i][m] / &pivot;
                    q[k][m] -= adj;
                }
            }
            diag.push(pivot);
        }
        Some((diag, l))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.ldlt().is_some()
    }

    /// Applies the unimodular transform `u` (new basis rows in terms of the
    /// old): result = U A Uᵀ.
    pub fn transformed(&self, u: &[Vec<BigInt>]) -> QuadraticForm {
        let d = self.dim();
        let ur: Vec<Vec<Rational>> = u
            .iter()
            .map(|row| row.iter().map(|c| Rational::from_integer(c.clone())).collect())
            .collect();
        let entries: Vec<Vec<Rational>> = (0..d)
            .map(|i| (0..d).map(|j| self.inner(&ur[i], &ur[j])).collect())
            .collect();
        QuadraticForm { entries }
    }

    /// Lattice reduction: returns an equivalent form U A Uᵀ with short,
    /// nearly orthogonal basis vectors, plus the unimodular U. Exact
    /// arithmetic throughout; dimension two uses the classical pairwise
    /// reduction and higher dimensions run LLL with factor 3/4.
    pub fn reduced(&self) -> Result<(QuadraticForm, Vec<Vec<BigInt>>), LatticeError> {
        if !self.is_positive_definite() {
            return Err(LatticeError::NotPositiveDefinite);
        }
        let d = self.dim();
        let mut g = self.entries.clone();
        let mut u: Vec<Vec<BigInt>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        if d == 1 {
            return Ok((QuadraticForm { entries: g }, u));
        }
        if d == 2 {
            lagrange_reduce(&mut g, &mut u);
        } else {
            lll_reduce(&mut g, &mut u);
        }
        Ok((QuadraticForm { entries: g }, u))
    }
}

/// Determinant over the rationals by Gaussian elimination.
pub(crate) fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::from_integer(1.into());
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(k, p);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in k..n {
                let t = &a[r][c] - &f * &a[k][c];
                a[r][c] = t;
            }
        }
    }
    det
}

/// b_target += c * b_source, applied to the Gram matrix and the transform.
fn row_op(g: &mut [Vec<Rational>], u: &mut [Vec<BigInt>], target: usize, source: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let d = g.len();
    let cr = Rational::from_integer(c.clone());
    for j in 0..d {
        let t = &g[target][j] + &cr * &g[source][j];
        g[target][j] = t;
    }
    for i in 0..d {
        let t = &g[i][target] + &cr * &g[i][source];
        g[i][target] = t;
    }
    for j in 0..d {
        let t = &u[target][j] + c * &u[source][j];
        u[target][j] = t;
    }
}

fn swap_rows(g: &mut [Vec<Rational>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    let d = g.len();
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
    let _ = d;
    u.swap(a, b);
}

/// Nearest integer to a rational (ties rounded away from zero).
fn round_to_int(x: &Rational) -> BigInt {
    x.round().to_integer()
}

/// Classical two-dimensional reduction: afterwards
/// 2|g01| <= g00 <= g11.
fn lagrange_reduce(g: &mut [Vec<Rational>], u: &mut [Vec<BigInt>]) {
    loop {
        if g[0][0] > g[1][1] {
            swap_rows(g, u, 0, 1);
        }
        let m = round_to_int(&(&g[0][1] / &g[0][0]));
        row_op(g, u, 1, 0, &-m);
        if g[1][1] >= g[0][0] {
            break;
        }
    }
}

/// Gram-Schmidt data from a Gram matrix: squared lengths B_i of the
/// orthogonalized vectors and coefficients mu[i][j] (j < i).
fn gso(g: &[Vec<Rational>]) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let d = g.len();
    let mut b = vec![Rational::zero(); d];
    let mut mu = vec![vec![Rational::zero(); d]; d];
    // r[i][j] = <b_i, b*_j>
    let mut r = vec![vec![Rational::zero(); d]; d];
    for i in 0..d {
        for j in 0..=i {
            let mut v = g[i][j].clone();
            for k in 0..j {
                v -= &mu[j][k] * &r[i][k];
            }
            r[i][j] = v;
            if j < i {
                mu[i][j] = &r[i][j] / &b[j];
            }
        }
        b[i] = r[i][i].clone();
    }
    (b, mu)
}

/// LLL with delta = 3/4 on the Gram matrix.
fn lll_reduce(g: &mut [Vec<Rational>], u: &mut [Vec<BigInt>]) {
    let d = g.len();
    let delta = Rational::new(3.into(), 4.into());
    let mut k = 1;
    while k < d {
        for j in (0..k).rev() {
            let (_, mu) = gso(g);
            let m = round_to_int(&mu[k][j]);
            row_op(g, u, k, j, &-m);
        }
        let (b, mu) = gso(g);
        let lovasz = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if b[k] >= lovasz {
            k += 1;
        } else {
            swap_rows(g, u, k, k - 1);
            k = k.max(2) - 1;
        }
    }
}
