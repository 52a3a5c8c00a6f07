use num::Zero;

use super::UCComplex;
use crate::cohomology::Scalar;
use crate::error::{Error, Result};
use crate::linalg::{c, Cx};

/// Number of log powers per block: `(log z)^0 .. (log z)^3`.
pub const LOG_DEGREE: usize = 4;

/// Relative size of the estimated truncation tail accepted by [`LogSeries::eval`].
pub const DEFAULT_TAIL_TOL: f64 = 1e-14;

/// `sum_n sum_k a[n][k] z^{rho + 3n} (log z)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries {
    pub rho: f64,
    pub blocks: Vec<[Cx; LOG_DEGREE]>,
}

/// A value together with its certified truncation estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Cx,
    /// Ratio-bound estimate of the omitted tail.
    pub tail: f64,
    /// Sum of the moduli of the included block contributions.
    pub abs_sum: f64,
}

/// `(p + d/dL)` applied to a polynomial in `L` of degree below four.
pub fn shift_derivative<T: Scalar>(p: &T, a: &[T; LOG_DEGREE]) -> [T; LOG_DEGREE] {
    std::array::from_fn(|k| {
        let mut v = p.clone() * a[k].clone();
        if k + 1 < LOG_DEGREE {
            v = v + T::from_int((k + 1) as i64) * a[k + 1].clone();
        }
        v
    })
}

/// Block `n` of `D^4 phi - 108 z^3 D phi - 162 z^3 phi`, split into the
/// two sides `(rho + 3n + d)^4 a_n` and `(108 (rho + 3n - 3 + d) + 162) a_{n-1}`.
pub fn ode_block_sides<T: Scalar>(
    exponent: &T,
    current: &[T; LOG_DEGREE],
    previous: Option<&[T; LOG_DEGREE]>,
) -> ([T; LOG_DEGREE], [T; LOG_DEGREE]) {
    let mut lhs = current.clone();
    for _ in 0..4 {
        lhs = shift_derivative(exponent, &lhs);
    }
    let rhs = match previous {
        None => std::array::from_fn(|_| T::zero()),
        Some(prev) => {
            let prev_exp = exponent.clone() - T::from_int(3);
            let d = shift_derivative(&prev_exp, prev);
            std::array::from_fn(|k| {
                T::from_int(108) * d[k].clone() + T::from_int(162) * prev[k].clone()
            })
        }
    };
    (lhs, rhs)
}

impl LogSeries {
    pub fn new(rho: f64, blocks: Vec<[Cx; LOG_DEGREE]>) -> Self {
        LogSeries { rho, blocks }
    }

    pub fn order(&self) -> usize {
        self.blocks.len()
    }

    pub fn truncated(&self, order: usize) -> Self {
        LogSeries {
            rho: self.rho,
            blocks: self.blocks.iter().take(order).cloned().collect(),
        }
    }

    pub fn scaled(&self, s: Cx) -> Self {
        LogSeries {
            rho: self.rho,
            blocks: self.blocks.iter().map(|b| b.map(|x| x * s)).collect(),
        }
    }

    /// Sum of two series with the same leading exponent.
    pub fn add(&self, other: &LogSeries) -> Self {
        assert_eq!(self.rho, other.rho, "adding series with different exponents");
        let n = self.blocks.len().min(other.blocks.len());
        LogSeries {
            rho: self.rho,
            blocks: (0..n)
                .map(|i| std::array::from_fn(|k| self.blocks[i][k] + other.blocks[i][k]))
                .collect(),
        }
    }

    pub fn linear_combination(terms: &[(Cx, &LogSeries)]) -> Self {
        let mut it = terms.iter();
        let (c0, s0) = it.next().expect("empty combination");
        it.fold(s0.scaled(*c0), |acc, (ck, sk)| acc.add(&sk.scaled(*ck)))
    }

    /// The series of `z -> phi(z e^{i theta})`, re-expanded in `log z`.
    pub fn rotated(&self, theta: f64) -> Self {
        let it = c(0.0, theta);
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(n, a)| {
                let phase = (it * (self.rho + 3.0 * n as f64)).exp();
                std::array::from_fn(|k| {
                    let mut acc = Cx::zero();
                    let mut binom = 1.0;
                    let mut pow = c(1.0, 0.0);
                    for kp in k..LOG_DEGREE {
                        if kp > k {
                            binom = binom * kp as f64 / (kp - k) as f64;
                            pow *= it;
                        }
                        acc += a[kp] * binom * pow;
                    }
                    acc * phase
                })
            })
            .collect();
        LogSeries {
            rho: self.rho,
            blocks,
        }
    }

    /// `m`-th derivative at `z`, with the ratio-bound tail estimate.
    pub fn evaluate(&self, z: UCComplex, m: usize) -> Evaluation {
        assert!(m <= 3, "derivative order {m} > 3");
        let lz = z.ln();
        let mut value = Cx::zero();
        let mut abs_sum = 0.0;
        let mut mags = Vec::with_capacity(self.blocks.len());
        for (n, block) in self.blocks.iter().enumerate() {
            let mut p = self.rho + 3.0 * n as f64;
            let mut poly = *block;
            for _ in 0..m {
                poly = shift_derivative(&c(p, 0.0), &poly);
                p -= 1.0;
            }
            let mut horner = Cx::zero();
            for k in (0..LOG_DEGREE).rev() {
                horner = horner * lz + poly[k];
            }
            let term = if horner.is_zero() {
                Cx::zero()
            } else {
                horner * (lz * p).exp()
            };
            value += term;
            abs_sum += term.norm();
            mags.push(term.norm());
        }
        Evaluation {
            value,
            tail: tail_estimate(&mags),
            abs_sum,
        }
    }

    /// `m`-th derivative at `z`; fails when the truncation tail is not
    /// negligible at working precision.
    pub fn eval(&self, z: UCComplex, m: usize) -> Result<Cx> {
        self.eval_with_tol(z, m, DEFAULT_TAIL_TOL)
    }

    pub fn eval_with_tol(&self, z: UCComplex, m: usize, tol: f64) -> Result<Cx> {
        let e = self.evaluate(z, m);
        if e.tail > tol * e.abs_sum.max(f64::MIN_POSITIVE) {
            return Err(Error::TailBound {
                modulus: z.modulus,
                tail: e.tail,
            });
        }
        Ok(e.value)
    }

    /// Maximal relative ODE residual over the blocks `0..order`.
    pub fn ode_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for n in 0..self.blocks.len() {
            let exponent = c(self.rho + 3.0 * n as f64, 0.0);
            let prev = if n > 0 { Some(&self.blocks[n - 1]) } else { None };
            let (lhs, rhs) = ode_block_sides(&exponent, &self.blocks[n], prev);
            let scale: f64 = lhs.iter().chain(rhs.iter()).map(|x| x.norm()).sum();
            if scale == 0.0 {
                continue;
            }
            let res: f64 = (0..LOG_DEGREE).map(|k| (lhs[k] - rhs[k]).norm()).fold(0.0, f64::max);
            worst = worst.max(res / scale);
        }
        worst
    }
}

/// Geometric-tail bound from the ratios of the last three block moduli.
fn tail_estimate(mags: &[f64]) -> f64 {
    let n = mags.len();
    if n < 3 {
        return f64::INFINITY;
    }
    let (a, b, last) = (mags[n - 3], mags[n - 2], mags[n - 1]);
    if last == 0.0 && b == 0.0 {
        return 0.0;
    }
    let r1 = if a > 0.0 { b / a } else { f64::INFINITY };
    let r2 = if b > 0.0 { last / b } else { f64::INFINITY };
    let r = r1.max(r2);
    if r >= 1.0 {
        return f64::INFINITY;
    }
    last * r / (1.0 - r)
}
