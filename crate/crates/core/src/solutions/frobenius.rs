//! Exact Frobenius basis at the regular singular point `z = 0`.
//!
//! Writing `phi = sum_n P_n(log z) z^{3n}`, the scalar equation becomes
//! `(3n + d)^4 P_n = (324 n - 162 + 108 d) P_{n-1}` with `d = d/d(log z)`.
//! Since `d` is nilpotent on cubic polynomials, `(3n + d)^{-4}` is a finite
//! binomial series and every block is determined exactly by `P_0`.

use num::{BigInt, One, Zero};

use super::logseries::{ode_block_sides, shift_derivative, LogSeries, LOG_DEGREE};
use crate::linalg::{c, q_to_f64, qi, CMatrix, Cx, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct RationalLogSeries {
    pub blocks: Vec<[Q; LOG_DEGREE]>,
}

fn inverse_shift4(n: usize, v: &[Q; LOG_DEGREE]) -> [Q; LOG_DEGREE] {
    // (3n + d)^{-4} = sum_j C(-4, j) (3n)^{-4-j} d^j
    const BINOM_NEG4: [i64; 4] = [1, -4, 10, -20];
    let base = qi(3 * n as i64);
    let zero = qi(0);
    let mut out: [Q; LOG_DEGREE] = std::array::from_fn(|_| Q::zero());
    let mut dj = v.clone();
    for (j, b) in BINOM_NEG4.iter().enumerate() {
        let w = qi(*b) / num::pow(base.clone(), 4 + j);
        for k in 0..LOG_DEGREE {
            out[k] += &w * &dj[k];
        }
        dj = shift_derivative(&zero, &dj);
    }
    out
}

impl RationalLogSeries {
    /// Solution with `P_0 = (log z)^k`.
    pub fn frobenius(k: usize, order: usize) -> Self {
        assert!(k < LOG_DEGREE && order >= 1);
        let mut p0: [Q; LOG_DEGREE] = std::array::from_fn(|_| Q::zero());
        p0[k] = Q::one();
        let mut blocks = vec![p0];
        for n in 1..order {
            let prev = &blocks[n - 1];
            let d = shift_derivative(&qi(0), prev);
            let rhs: [Q; LOG_DEGREE] = std::array::from_fn(|i| {
                qi(324 * n as i64 - 162) * &prev[i] + qi(108) * &d[i]
            });
            blocks.push(inverse_shift4(n, &rhs));
        }
        RationalLogSeries { blocks }
    }

    pub fn to_log_series(&self) -> LogSeries {
        LogSeries::new(
            0.0,
            self.blocks.iter().map(|b| b.each_ref().map(|x| c(q_to_f64(x), 0.0))).collect(),
        )
    }

    /// True when every block through the truncation satisfies the ODE exactly.
    pub fn solves_ode_exactly(&self) -> bool {
        (0..self.blocks.len()).all(|n| {
            let prev = if n > 0 { Some(&self.blocks[n - 1]) } else { None };
            let (lhs, rhs) = ode_block_sides(&qi(3 * n as i64), &self.blocks[n], prev);
            lhs == rhs
        })
    }
}

/// The log-free solution normalized to 1 at `z = 0`.
pub fn quantum_period(order: usize) -> RationalLogSeries {
    RationalLogSeries::frobenius(0, order)
}

/// Closed form `(2d)! / (d!)^5` of the quantum period coefficients.
pub fn period_closed_form(d: usize) -> Q {
    let fact = |m: usize| -> BigInt { (1..=m).map(BigInt::from).product() };
    Q::new(fact(2 * d), num::pow(fact(d), 5))
}

/// The four solutions with `P_0 = 1, log z, (log z)^2, (log z)^3`.
pub fn frobenius_basis(order: usize) -> [RationalLogSeries; LOG_DEGREE] {
    std::array::from_fn(|k| RationalLogSeries::frobenius(k, order))
}

/// Coordinates of a `rho = 0` solution in the Frobenius basis: its block at
/// `z^0`, since the basis element `k` starts with `(log z)^k`.
pub fn frobenius_coordinates(series: &LogSeries) -> [Cx; LOG_DEGREE] {
    assert_eq!(series.rho, 0.0);
    series.blocks[0]
}

/// Matrix of `phi(z) -> phi(z epsilon)` in the Frobenius basis, read off from
/// the rotated basis elements (column `k` = image of basis element `k`).
pub fn rotation_matrix(order: usize) -> CMatrix {
    let basis = frobenius_basis(order.max(2));
    let theta = 2.0 * std::f64::consts::PI / 3.0;
    let cols: Vec<[Cx; LOG_DEGREE]> = basis
        .iter()
        .map(|b| frobenius_coordinates(&b.to_log_series().rotated(theta)))
        .collect();
    CMatrix::from_fn(LOG_DEGREE, LOG_DEGREE, |i, j| cols[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, q};
    use crate::solutions::UCComplex;

    #[test]
    fn period_coefficients() {
        let p = quantum_period(8);
        let expected = [qi(1), qi(2), q(3, 4), q(5, 54), q(35, 6912), q(7, 48000)];
        for (d, e) in expected.iter().enumerate() {
            assert_eq!(&p.blocks[d][0], e);
            assert_eq!(&period_closed_form(d), e);
            assert!(p.blocks[d][1..].iter().all(Zero::is_zero));
        }
        assert_eq!(p.blocks[6][0], period_closed_form(6));
        assert_eq!(p.blocks[7][0], period_closed_form(7));
    }

    #[test]
    fn basis_solves_ode() {
        for b in frobenius_basis(12) {
            assert!(b.solves_ode_exactly());
            assert!(b.to_log_series().ode_residual() < 1e-15);
        }
    }

    #[test]
    fn rotation_is_unipotent() {
        let a = rotation_matrix(4);
        let id = CMatrix::identity(4, 4);
        let n = &a - &id;
        let n4 = &n * &n * &n * &n;
        assert!(max_abs(&n4) < 1e-12);
        let a2 = &a * &a;
        let quartic = &a2 * &a2 - &a2 * &a * c(4.0, 0.0) + &a2 * c(6.0, 0.0) - &a * c(4.0, 0.0) + id;
        assert!(max_abs(&quartic) < 1e-12);
    }

    #[test]
    fn period_is_invariant_under_epsilon() {
        let p = quantum_period(30).to_log_series();
        let z = UCComplex::polar(0.9, 0.2);
        let a = p.eval(z, 0).unwrap();
        let b = p.eval(z.rotated_eps(1), 0).unwrap();
        let c2 = p.eval(z.rotated(2.0 * std::f64::consts::PI), 0).unwrap();
        assert!((a - b).norm() < 1e-14 * a.norm());
        assert!((a - c2).norm() < 1e-14 * a.norm());
    }

    #[test]
    fn period_partial_sums() {
        let p = quantum_period(20);
        let x: f64 = 0.5;
        let direct: f64 = (0..20).map(|d| q_to_f64(&period_closed_form(d)) * x.powi(3 * d as i32)).sum();
        let v = p.to_log_series().eval(UCComplex::polar(x, 0.0), 0).unwrap();
        assert!((v.re - direct).abs() < 1e-15 * direct && v.im.abs() < 1e-15);
    }
}
