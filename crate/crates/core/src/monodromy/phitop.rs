//! The topological-enumerative solution `Y_top = Phi(z) z^mu z^R` at
//! `v = 0, q = 1`, with `Phi` solved order by order in exact arithmetic.

use num::{One, Signed, Zero};

use crate::cohomology::{eta_exact, mu_diagonal, operator_matrices_exact, DIM};
use crate::error::{Error, Result};
use crate::linalg::{c, expm_nilpotent, max_abs, qi, CMatrix, Cx, QMatrix, Q};
use crate::solutions::UCComplex;

#[derive(Clone, Debug, PartialEq)]
pub struct PhiTopSeries {
    /// `Phi_0 = I, Phi_1, ..., Phi_N`
    pub coeffs: Vec<QMatrix>,
}

/// Solves `(k + mu_b - mu_a) (Phi_k)_{ab} = (U Phi_{k-1} - Phi_{k-1} R)_{ab}`;
/// entries with vanishing divisor are set to zero after checking that their
/// right-hand side vanishes.
pub fn phi_top(order: usize) -> Result<PhiTopSeries> {
    let ops = operator_matrices_exact(&Q::one());
    let mu = mu_diagonal();
    let mut coeffs = vec![QMatrix::identity(DIM)];
    for k in 1..=order {
        let prev = &coeffs[k - 1];
        let rhs = &(&ops.u * prev) - &(prev * &ops.r);
        let mut next = QMatrix::zeros(DIM);
        for a in 0..DIM {
            for b in 0..DIM {
                let d = qi(k as i64) + &mu[b] - &mu[a];
                if d.is_zero() {
                    if !rhs[(a, b)].is_zero() {
                        return Err(Error::InconsistentResonance {
                            order: k,
                            row: a + 1,
                            col: b + 1,
                        });
                    }
                } else {
                    next[(a, b)] = &rhs[(a, b)] / d;
                }
            }
        }
        coeffs.push(next);
    }
    Ok(PhiTopSeries { coeffs })
}

/// Outcome of the exact structural checks on a [`PhiTopSeries`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiTopChecks {
    pub recursion: bool,
    pub grading: bool,
    pub eta_orthogonality: bool,
}

impl PhiTopChecks {
    pub fn all(&self) -> bool {
        self.recursion && self.grading && self.eta_orthogonality
    }
}

impl PhiTopSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn checks(&self) -> PhiTopChecks {
        let ops = operator_matrices_exact(&Q::one());
        let mu = mu_diagonal();
        let eta = eta_exact();
        let recursion = (1..self.coeffs.len()).all(|k| {
            let p = &self.coeffs[k];
            let lhs = &(&p.scale(&qi(k as i64)) + &(p * &ops.mu)) - &(&ops.mu * p);
            let rhs = &(&ops.u * &self.coeffs[k - 1]) - &(&self.coeffs[k - 1] * &ops.r);
            lhs == rhs
        });
        let grading = self.coeffs.iter().enumerate().all(|(k, p)| {
            (0..DIM).all(|a| {
                (0..DIM).all(|b| {
                    let w = qi(k as i64) + &mu[b] - &mu[a];
                    !w.is_negative() || p[(a, b)].is_zero()
                })
            })
        });
        let eta_orthogonality = (1..self.coeffs.len()).all(|k| {
            let mut acc = QMatrix::zeros(DIM);
            for a in 0..=k {
                let term = &(&self.coeffs[a].transpose() * &eta) * &self.coeffs[k - a];
                acc = if a % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc.is_zero()
        });
        PhiTopChecks {
            recursion,
            grading,
            eta_orthogonality,
        }
    }

    pub fn complex_coeffs(&self) -> Vec<CMatrix> {
        self.coeffs.iter().map(QMatrix::to_cmatrix).collect()
    }
}

/// Floating-point evaluator for `Y_top`.
#[derive(Clone, Debug)]
pub struct TopSolution {
    pub series: PhiTopSeries,
    coeffs: Vec<CMatrix>,
    mu: [f64; DIM],
    r: CMatrix,
}

impl TopSolution {
    pub fn new(order: usize) -> Result<Self> {
        let series = phi_top(order)?;
        let coeffs = series.complex_coeffs();
        let ops = operator_matrices_exact(&Q::one());
        Ok(TopSolution {
            series,
            coeffs,
            mu: std::array::from_fn(|i| i as f64 - 1.5),
            r: ops.r.to_cmatrix(),
        })
    }

    /// `Phi(z)`, with a ratio-bound check on the last three terms.
    pub fn phi(&self, z: UCComplex) -> Result<CMatrix> {
        let zc = z.to_complex();
        let mut out = CMatrix::zeros(DIM, DIM);
        let mut mags = Vec::with_capacity(self.coeffs.len());
        let mut zk = Cx::one();
        for p in &self.coeffs {
            let term = p * zk;
            mags.push(max_abs(&term));
            out += term;
            zk *= zc;
        }
        let n = mags.len();
        let total: f64 = mags.iter().sum();
        let last = mags[n - 1].max(mags[n - 2]).max(mags[n - 3]);
        if last > 1e-15 * total {
            return Err(Error::TailBound {
                modulus: z.modulus,
                tail: last,
            });
        }
        Ok(out)
    }

    pub fn z_mu(&self, z: UCComplex) -> CMatrix {
        let entries: Vec<Cx> = self.mu.iter().map(|m| z.powf(*m)).collect();
        crate::linalg::diag(&entries)
    }

    pub fn z_r(&self, z: UCComplex) -> CMatrix {
        expm_nilpotent(&self.r, z.ln())
    }

    pub fn eval(&self, z: UCComplex) -> Result<CMatrix> {
        Ok(self.phi(z)? * self.z_mu(z) * self.z_r(z))
    }

    /// `e^{2 pi i mu} e^{2 pi i R}`
    pub fn monodromy_factor(&self) -> CMatrix {
        let two_pi_i = c(0.0, 2.0 * std::f64::consts::PI);
        let e_mu: Vec<Cx> = self.mu.iter().map(|m| (two_pi_i * m).exp()).collect();
        crate::linalg::diag(&e_mu) * expm_nilpotent(&self.r, two_pi_i)
    }
}
