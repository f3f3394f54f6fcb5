//! Exact linear algebra over the rationals and over `Q[t]`.
//!
//! Matrices are dense row-major `Vec<Vec<Rat>>`; everything here is
//! elimination at desk scale, so no pivoting strategy beyond "first nonzero"
//! is needed — verdicts are exact either way.

use crate::rational::Rat;
use num_traits::{One, Zero};

pub type QMat = Vec<Vec<Rat>>;

pub fn zeros(rows: usize, cols: usize) -> QMat {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn identity(n: usize) -> QMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    debug_assert_eq!(inner, b.len());
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn mat_vec(a: &QMat, v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rat::zero(), |acc, (c, x)| acc + c * x)
        })
        .collect()
}

fn row_echelon(mut m: QMat) -> (QMat, Vec<usize>) {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &QMat) -> usize {
    row_echelon(m.clone()).1.len()
}

/// Solve `A x = b`; `None` when the system is inconsistent.
pub fn solve(a: &QMat, b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    debug_assert_eq!(rows, b.len());
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    if rows == 0 {
        return Some(vec![Rat::zero(); cols]);
    }
    let (ech, pivots) = row_echelon(std::mem::take(&mut aug));
    // Inconsistent iff a pivot lands in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = ech[r][cols].clone();
    }
    Some(x)
}

/// True iff `target` lies in the column span of `vectors`.
pub fn in_span(vectors: &[Vec<Rat>], target: &[Rat]) -> bool {
    if target.iter().all(Rat::is_zero) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    let rows = target.len();
    let a: QMat = (0..rows)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    solve(&a, target).is_some()
}

/// Basis of the kernel of `m` (as column vectors).
pub fn kernel_basis(m: &QMat) -> Vec<Vec<Rat>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    if m.is_empty() {
        return (0..cols)
            .map(|j| {
                let mut v = vec![Rat::zero(); cols];
                v[j] = Rat::one();
                v
            })
            .collect();
    }
    let (ech, pivots) = row_echelon(m.clone());
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -ech[r][f].clone();
            }
            v
        })
        .collect()
}

/// Coefficients of the characteristic polynomial of a square matrix,
/// `x^n + c[1] x^(n-1) + ... + c[n]`, returned as `[1, c1, ..., cn]`.
/// Faddeev–LeVerrier; exact over the rationals.
pub fn char_poly(m: &QMat) -> Vec<Rat> {
    let n = m.len();
    let mut coeffs = vec![Rat::one()];
    let mut acc = identity(n);
    for k in 1..=n {
        acc = mat_mul(m, &acc);
        let trace: Rat = (0..n).map(|i| acc[i][i].clone()).sum();
        let ck = -trace / Rat::from_integer(k.into());
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += ck.clone();
        }
        coeffs.push(ck);
    }
    coeffs
}

/// True iff the characteristic polynomial is `x^n`.
pub fn is_nilpotent(m: &QMat) -> bool {
    char_poly(m).iter().skip(1).all(Rat::is_zero)
}

// ---------------------------------------------------------------------------
// Dense polynomials over Q and fraction-free rank of polynomial matrices.
// ---------------------------------------------------------------------------

/// Polynomial in one variable over the rationals, dense coefficients,
/// constant term first. The zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<Rat>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(r: Rat) -> Self {
        if r.is_zero() {
            QPoly::zero()
        } else {
            QPoly(vec![r])
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval_zero(&self) -> Rat {
        self.0.first().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn derivative(&self) -> QPoly {
        let coeffs = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer(k.into()))
            .collect();
        QPoly::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(Rat::zero);
                let b = other.0.get(i).cloned().unwrap_or_else(Rat::zero);
                a + b
            })
            .collect();
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    /// Exact division; panics if the remainder is nonzero. Only ever called
    /// on divisions that Bareiss elimination guarantees to be exact.
    pub fn div_exact(&self, divisor: &QPoly) -> QPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut rem = self.0.clone();
        let dd = divisor.0.len() - 1;
        let lead = divisor.0.last().unwrap();
        assert!(rem.len() > dd || rem.len() == divisor.0.len());
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            if !c.is_zero() {
                for (j, d) in divisor.0.iter().enumerate() {
                    let t = &c * d;
                    rem[k + j] -= t;
                }
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(Rat::is_zero), "inexact polynomial division");
        QPoly::from_coeffs(quot)
    }
}

/// Rank of a matrix of polynomials over the fraction field `Q(t)`,
/// by Bareiss-style fraction-free elimination (divisions are exact).
pub fn poly_mat_rank(m: &[Vec<QPoly>]) -> usize {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut w: Vec<Vec<QPoly>> = m.to_vec();
    let mut prev = QPoly::constant(Rat::one());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !w[i][c].is_zero()) else {
            continue;
        };
        w.swap(r, p);
        let pivot = w[r][c].clone();
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = pivot.mul(&w[i][j]).sub(&w[i][c].mul(&w[r][j]));
                w[i][j] = num.div_exact(&prev);
            }
            w[i][c] = QPoly::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}
