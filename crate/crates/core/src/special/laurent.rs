use std::f64::consts::{LN_2, PI};

use num::Zero;

use super::gamma::{is_pole, ln_gamma, ln_gamma_lattice};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{Cx, I};

/// The two Mellin-Barnes integrands, without the `z^{-3s}` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MellinIntegrand {
    /// `Gamma(s)^4 / Gamma(s + 1/2) 2^{-2s} e^{i pi s}`
    Phi1,
    /// `Gamma(s)^4 Gamma(1/2 - s) 2^{-2s}`
    Phi2,
}

impl MellinIntegrand {
    pub fn name(self) -> &'static str {
        match self {
            MellinIntegrand::Phi1 => "phi1",
            MellinIntegrand::Phi2 => "phi2",
        }
    }

    /// `log g(s)` at a general point.
    pub fn ln_value(self, s: Cx) -> Result<Cx> {
        if self == MellinIntegrand::Phi1 && is_pole(s + 0.5) {
            // zero of 1/Gamma(s + 1/2)
            return Ok(Cx::new(f64::NEG_INFINITY, 0.0));
        }
        let common = 4.0 * ln_gamma(s)? - 2.0 * LN_2 * s;
        Ok(match self {
            MellinIntegrand::Phi1 => common - ln_gamma(s + 0.5)? + I * PI * s,
            MellinIntegrand::Phi2 => common + ln_gamma(0.5 - s)?,
        })
    }

    pub fn value(self, s: Cx) -> Result<Cx> {
        self.ln_value(s).map(Cx::exp)
    }

    /// `log g(-n + delta)`, keeping full relative accuracy for small `delta`.
    pub fn ln_value_near_pole(self, n: usize, delta: Cx) -> Cx {
        let m = -(n as i64);
        let parity_pi = if n % 2 == 1 { Cx::new(0.0, PI) } else { Cx::zero() };
        let common = 4.0 * ln_gamma_lattice(m, delta) + 2.0 * LN_2 * n as f64 - 2.0 * LN_2 * delta;
        match self {
            // e^{i pi (-n + delta)} = (-1)^n e^{i pi delta}
            MellinIntegrand::Phi1 => {
                common - ln_gamma_lattice(m, delta + 0.5) + I * PI * delta + parity_pi
            }
            MellinIntegrand::Phi2 => common + ln_gamma_lattice(n as i64, 0.5 - delta),
        }
    }
}

/// Laurent data at the fourth-order pole `s = -n`: `coeffs[j]` multiplies
/// `(s + n)^{j - 4}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentBlock {
    pub n: usize,
    pub coeffs: [Cx; 4],
}

impl LaurentBlock {
    /// Principal part at `s = -n + delta`.
    pub fn principal_part(&self, delta: Cx) -> Cx {
        (0..4).map(|j| self.coeffs[j] * delta.powi(j as i32 - 4)).sum()
    }
}

fn check_quadrature(radius: f64, nodes: usize) -> Result<()> {
    if !(radius > 0.0 && radius < 0.5) {
        return Err(Error::RadiusOutOfRange(radius));
    }
    if nodes < 128 || !nodes.is_power_of_two() {
        return Err(Error::BadNodeCount(nodes));
    }
    Ok(())
}

/// Trapezoid rule on the circle `|s + n| = radius`:
/// `L[j] = (1/N) sum_k g(s_k) delta_k^{4-j}`.
pub fn laurent_coefficients(
    kind: MellinIntegrand,
    n: usize,
    radius: f64,
    nodes: usize,
) -> Result<LaurentBlock> {
    check_quadrature(radius, nodes)?;
    let mut coeffs = [Cx::zero(); 4];
    for k in 0..nodes {
        let theta = 2.0 * PI * k as f64 / nodes as f64;
        let delta = Cx::from_polar(radius, theta);
        let g = kind.ln_value_near_pole(n, delta).exp();
        let mut w = g * delta.powi(4);
        // descend powers: L[0] takes delta^4, L[3] takes delta^1
        for j in 0..4 {
            coeffs[j] += w;
            w /= delta;
        }
    }
    for z in &mut coeffs {
        *z /= nodes as f64;
    }
    Ok(LaurentBlock { n, coeffs })
}

/// Blocks for `n = 0..count`, computed independently (possibly in parallel).
pub fn laurent_blocks(
    kind: MellinIntegrand,
    count: usize,
    radius: f64,
    nodes: usize,
    exec: Exec,
) -> Result<Vec<LaurentBlock>> {
    check_quadrature(radius, nodes)?;
    exec.map_range(count, |n| laurent_coefficients(kind, n, radius, nodes))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::special::constants;

    fn close(a: Cx, b: Cx, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn phi2_leading_coefficient_at_zero() {
        let b = laurent_coefficients(MellinIntegrand::Phi2, 0, 0.25, 256).unwrap();
        assert!(close(b.coeffs[0], c(PI.sqrt(), 0.0), 1e-13));
    }

    #[test]
    fn radius_independence() {
        for kind in [MellinIntegrand::Phi1, MellinIntegrand::Phi2] {
            let a = laurent_coefficients(kind, 0, 0.2, 256).unwrap();
            let b = laurent_coefficients(kind, 0, 0.3, 256).unwrap();
            for j in 0..4 {
                assert!(close(a.coeffs[j], b.coeffs[j], 1e-12), "{kind:?} j={j}");
            }
        }
    }

    /// Series oracle for PHI2 at s = -1. With t = s + 1:
    ///   Gamma(s) = -1/t * exp(-g1 t - z2/2 t^2 - ...) * 1/(1 - t)... expanded by
    ///   Gamma(t - 1) = Gamma(t + 1) / (t (t - 1)).
    /// Everything is assembled as power series in t to order 6.
    #[test]
    fn phi2_block_at_minus_one_against_series() {
        const M: usize = 7;
        type S = [Cx; M];
        fn mul(a: &S, b: &S) -> S {
            let mut r = [Cx::zero(); M];
            for i in 0..M {
                for j in 0..M - i {
                    r[i + j] += a[i] * b[j];
                }
            }
            r
        }
        fn exp_series(a: &S) -> S {
            // a[0] == 0 assumed
            let mut r = [Cx::zero(); M];
            r[0] = Cx::new(1.0, 0.0);
            let mut term = r;
            for k in 1..M {
                term = mul(&term, a);
                for i in 0..M {
                    term[i] /= k as f64;
                }
                for i in 0..M {
                    r[i] += term[i];
                }
            }
            r
        }
        let k = constants();
        // zeta values for log Gamma(1 + t) = -g t + sum_{m>=2} (-1)^m zeta(m) t^m / m
        let zetas = [
            0.0,
            0.0,
            k.zeta2,
            k.zeta3,
            1.082_323_233_711_138_2,
            1.036_927_755_143_37,
            1.017_343_061_984_449,
        ];
        let mut lg1 = [Cx::zero(); M];
        lg1[1] = c(-k.euler_gamma, 0.0);
        for m in 2..M {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            lg1[m] = c(sign * zetas[m] / m as f64, 0.0);
        }
        let gamma_1pt = exp_series(&lg1);
        // 1/(t - 1) = -(1 + t + t^2 + ...)
        let geo: S = [c(-1.0, 0.0); M];
        // t * Gamma(t - 1) = Gamma(1 + t) / (t - 1)
        let t_gamma = mul(&gamma_1pt, &geo);
        let t4_gamma4 = mul(&mul(&t_gamma, &t_gamma), &mul(&t_gamma, &t_gamma));
        // Gamma(3/2 - t) 2^{2 - 2t}: evaluated numerically via Taylor from
        // the known log-derivative psi(3/2) = 2 - g - 2 ln 2 and higher polygammas
        // psi^(m)(3/2) = (-1)^(m+1) m! (zeta(m+1)(2^{m+1} - 1) - 2^{m+1}).
        let psi0 = 2.0 - k.euler_gamma - 2.0 * LN_2;
        let mut lrest = [Cx::zero(); M];
        lrest[0] = c((0.5 * PI.sqrt()).ln() + 2.0 * LN_2, 0.0);
        lrest[1] = c(-psi0 - 2.0 * LN_2, 0.0);
        let mut fact = 1.0;
        for m in 1..M - 1 {
            fact *= m as f64;
            let p = 2f64.powi(m as i32 + 1);
            let psi_m = if m % 2 == 1 { 1.0 } else { -1.0 } * fact * (zetas[m + 1] * (p - 1.0) - p);
            // coefficient of t^{m+1} in log Gamma(3/2 - t): psi^(m) (-1)^{m+1} / (m+1)!
            let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
            lrest[m + 1] = c(sign * psi_m / (fact * (m + 1) as f64), 0.0);
        }
        let mut lrest_shift = lrest;
        lrest_shift[0] = Cx::zero();
        let rest = exp_series(&lrest_shift).map(|x| x * lrest[0].exp());
        let full = mul(&t4_gamma4, &rest);
        let b = laurent_coefficients(MellinIntegrand::Phi2, 1, 0.25, 256).unwrap();
        for j in 0..4 {
            assert!(close(b.coeffs[j], full[j], 1e-11), "j={j}: {} vs {}", b.coeffs[j], full[j]);
        }
    }

    #[test]
    fn regular_part_reconstruction() {
        // g - principal part is analytic in the disc, so its Cauchy integral for
        // the value at an interior point reproduces g there.
        let kind = MellinIntegrand::Phi1;
        let n = 2;
        let b = laurent_coefficients(kind, n, 0.25, 256).unwrap();
        let r = 0.3;
        let nodes = 512;
        let target = c(0.05, -0.04);
        let mut acc = Cx::zero();
        for k in 0..nodes {
            let d = Cx::from_polar(r, 2.0 * PI * k as f64 / nodes as f64);
            let reg = kind.ln_value_near_pole(n, d).exp() - b.principal_part(d);
            acc += reg * d / (d - target);
        }
        acc /= nodes as f64;
        let direct = kind.ln_value_near_pole(n, target).exp() - b.principal_part(target);
        let g = kind.ln_value_near_pole(n, target).exp();
        assert!((acc - direct).norm() <= 1e-12 * g.norm());
    }

    #[test]
    fn residue_sum_over_rectangle() {
        // rectangle Re s in [-1.5, 0.5], Im s in [-6, 6] encloses s = 0, -1
        let kind = MellinIntegrand::Phi1;
        let z = c(0.8, 0.3);
        let lz = z.ln();
        let f = |s: Cx| (kind.ln_value(s).unwrap() - 3.0 * s * lz).exp();
        let seg = |a: Cx, b: Cx, m: usize| -> Cx {
            // Gauss-Legendre would do; composite Simpson is enough here
            let h = (b - a) / m as f64;
            let mut acc = f(a) + f(b);
            for k in 1..m {
                let w = if k % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * f(a + h * k as f64);
            }
            acc * h / 3.0
        };
        let corners = [c(0.5, -6.0), c(0.5, 6.0), c(-1.5, 6.0), c(-1.5, -6.0)];
        let mut total = Cx::zero();
        for i in 0..4 {
            total += seg(corners[i], corners[(i + 1) % 4], 6000);
        }
        let contour = total / (2.0 * PI * I);
        let mut residues = Cx::zero();
        for n in 0..2 {
            let b = laurent_coefficients(kind, n, 0.25, 256).unwrap();
            // z^{-3s} = z^{3n} sum_j (-3 log z)^j t^j / j!; residue picks t^{-1}
            let zn = (3.0 * n as f64 * lz).exp();
            let mut fact = 1.0;
            for j in 0..4 {
                if j > 0 {
                    fact *= j as f64;
                }
                residues += zn * b.coeffs[3 - j] * (-3.0 * lz).powi(j as i32) / fact;
            }
        }
        assert!((contour - residues).norm() < 1e-10, "{contour} vs {residues}");
    }

    #[test]
    fn bad_parameters() {
        let k = MellinIntegrand::Phi1;
        assert_eq!(laurent_coefficients(k, 0, 0.5, 256), Err(Error::RadiusOutOfRange(0.5)));
        assert_eq!(laurent_coefficients(k, 0, 0.2, 100), Err(Error::BadNodeCount(100)));
    }

    #[test]
    fn parallel_blocks_match_sequential() {
        let a = laurent_blocks(MellinIntegrand::Phi2, 12, 0.25, 128, Exec::Sequential).unwrap();
        let b = laurent_blocks(MellinIntegrand::Phi2, 12, 0.25, 128, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
