//! Dense complex matrices (backed by nalgebra) and small exact rational
//! matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Cx = Complex64;
pub type CMatrix = DMatrix<Cx>;
pub type Q = BigRational;

pub const I: Cx = Cx::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_to_f64(x: &Q) -> f64 {
    // numer/denom can overflow f64 individually for long series
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = x.denom().bits() as i64 - 900;
            if shift > 0 {
                let n = x.numer() >> (shift as usize);
                let d = x.denom() >> (shift as usize);
                n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(f64::INFINITY)
            } else {
                x.to_f64().unwrap_or(f64::NAN)
            }
        }
    }
}

pub fn from_rows<const N: usize>(rows: [[f64; N]; N]) -> CMatrix {
    CMatrix::from_fn(N, N, |i, j| c(rows[i][j], 0.0))
}

pub fn from_complex_rows<const N: usize>(rows: [[Cx; N]; N]) -> CMatrix {
    CMatrix::from_fn(N, N, |i, j| rows[i][j])
}

pub fn diag(entries: &[Cx]) -> CMatrix {
    let n = entries.len();
    CMatrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { Cx::zero() })
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn inverse(m: &CMatrix, what: &'static str) -> Result<CMatrix> {
    m.clone().try_inverse().ok_or(Error::Singular(what))
}

/// Solves `a * x = b`.
pub fn solve(a: &CMatrix, b: &CMatrix, what: &'static str) -> Result<CMatrix> {
    a.clone().lu().solve(b).ok_or(Error::Singular(what))
}

/// `exp(t * n)` for nilpotent `n`, summed until the powers vanish.
pub fn expm_nilpotent(n: &CMatrix, t: Cx) -> CMatrix {
    let dim = n.nrows();
    let mut out = CMatrix::identity(dim, dim);
    let mut term = CMatrix::identity(dim, dim);
    for k in 1..=dim {
        term = &term * n * (t / k as f64);
        if max_abs(&term) == 0.0 {
            break;
        }
        out += &term;
    }
    out
}

/// Permutation matrix with `P[i][perm[i]] = 1`.
pub fn permutation_matrix(perm: &[usize]) -> CMatrix {
    let n = perm.len();
    CMatrix::from_fn(n, n, |i, j| {
        if perm[i] == j {
            Cx::one()
        } else {
            Cx::zero()
        }
    })
}

/// Square matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        QMatrix {
            n,
            data: vec![Q::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_int_rows<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| qi(rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Q) -> Self {
        QMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_fn(self.n, self.n, |i, j| c(q_to_f64(&self[(i, j)]), 0.0))
    }

    /// Entries as integers, if all of them are.
    pub fn to_integers(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let x = &self[(i, j)];
                        if x.is_integer() {
                            x.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn max_abs(&self) -> Q {
        self.data
            .iter()
            .map(|x| x.abs())
            .fold(Q::zero(), |a, b| if b > a { b } else { a })
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        QMatrix::from_fn(self.n, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        QMatrix::from_fn(self.n, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(&-Q::one())
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        let n = self.n;
        QMatrix::from_fn(n, |i, j| {
            let mut acc = Q::zero();
            for k in 0..n {
                if !self[(i, k)].is_zero() && !rhs[(k, j)].is_zero() {
                    acc += &self[(i, k)] * &rhs[(k, j)];
                }
            }
            acc
        })
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_exponential_matches_series() {
        let n = from_rows([[0.0, 0.0, 0.0], [3.0, 0.0, 0.0], [0.0, 6.0, 0.0]]);
        let t = c(0.3, -1.2);
        let e = expm_nilpotent(&n, t);
        let n2 = &n * &n;
        let expected = CMatrix::identity(3, 3) + &n * t + n2 * (t * t / 2.0);
        assert!(max_abs_diff(&e, &expected) < 1e-14);
    }

    #[test]
    fn q_to_f64_handles_huge_parts() {
        let big = num::pow(BigInt::from(10), 400);
        let x = Q::new(big.clone() * 3, big * 4);
        assert_eq!(q_to_f64(&x), 0.75);
    }

    #[test]
    fn rational_product_and_transpose() {
        let a = QMatrix::from_int_rows([[1, 2], [3, 4]]);
        let b = QMatrix::from_int_rows([[0, 1], [1, 0]]);
        assert_eq!(&a * &b, QMatrix::from_int_rows([[2, 1], [4, 3]]));
        assert_eq!(a.transpose(), QMatrix::from_int_rows([[1, 3], [2, 4]]));
    }
}
