use std::f64::consts::PI;

use super::UCComplex;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{c, Cx, I};
use crate::special::MellinIntegrand;

/// Validity sector of the contour representation, as an open interval of
/// `arg z`. For `phi1` the integral converges on `(-pi/6, 5 pi/6)`; the
/// representation is used only on the smaller interval `(-pi/6, pi/2)`
/// where it coincides with the series continuation used everywhere else.
pub fn validity_sector(kind: MellinIntegrand) -> (f64, f64) {
    match kind {
        MellinIntegrand::Phi1 => (-PI / 6.0, PI / 2.0),
        MellinIntegrand::Phi2 => (-5.0 * PI / 6.0, 5.0 * PI / 6.0),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourOptions {
    /// Abscissa of the vertical line; defaults to 1/2 for `phi1`, 1/4 for `phi2`.
    pub kappa: Option<f64>,
    /// Relative change (against the integral of `|f|`) accepted between
    /// successive step halvings.
    pub tol: f64,
    /// Cut-off: the line is truncated once `|f|` falls below `cutoff * max |f|`.
    pub cutoff: f64,
    pub initial_step: f64,
    pub max_halvings: u32,
    pub max_height: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        ContourOptions {
            kappa: None,
            tol: 1e-14,
            cutoff: 1e-18,
            initial_step: 0.25,
            max_halvings: 10,
            max_height: 2000.0,
        }
    }
}

fn default_kappa(kind: MellinIntegrand) -> f64 {
    match kind {
        MellinIntegrand::Phi1 => 0.5,
        MellinIntegrand::Phi2 => 0.25,
    }
}

/// `int_{kappa - i inf}^{kappa + i inf} g(s) z^{-3s} ds` by the trapezoid rule
/// in `t = Im s`, with the step halved until the result settles.
pub fn contour_eval(kind: MellinIntegrand, z: UCComplex) -> Result<Cx> {
    contour_eval_with(kind, z, ContourOptions::default(), Exec::default())
}

pub fn contour_eval_with(
    kind: MellinIntegrand,
    z: UCComplex,
    opts: ContourOptions,
    exec: Exec,
) -> Result<Cx> {
    let (lo, hi) = validity_sector(kind);
    if !(z.arg > lo && z.arg < hi) {
        return Err(Error::SectorViolation {
            what: kind.name(),
            arg: z.arg,
            lo,
            hi,
        });
    }
    let kappa = opts.kappa.unwrap_or_else(|| default_kappa(kind));
    let valid_kappa = match kind {
        MellinIntegrand::Phi1 => kappa > 0.0,
        MellinIntegrand::Phi2 => kappa > 0.0 && kappa < 0.5,
    };
    if !valid_kappa {
        return Err(Error::Config(format!("kappa = {kappa} invalid for {}", kind.name())));
    }
    let lz = z.ln();
    let log_f = |t: f64| -> Result<Cx> {
        let s = c(kappa, t);
        Ok(kind.ln_value(s)? - 3.0 * s * lz)
    };
    let f = |t: f64| -> Result<Cx> { Ok(I * log_f(t)?.exp()) };

    // truncation heights from the decay of |f|, scanning in unit steps
    let mut peak = f64::NEG_INFINITY;
    let mut heights = [0.0f64; 2];
    for (side, sign) in [1.0f64, -1.0].iter().enumerate() {
        let mut t = 0.0;
        loop {
            let lm = log_f(sign * t)?.re;
            peak = peak.max(lm);
            if t > 1.0 && lm < peak + opts.cutoff.ln() {
                break;
            }
            t += 1.0;
            if t > opts.max_height {
                return Err(Error::NonConvergence(format!(
                    "{} integrand not decaying by |Im s| = {}",
                    kind.name(),
                    opts.max_height
                )));
            }
        }
        heights[side] = t;
    }
    let (top, bottom) = (heights[0], -heights[1]);

    let mut h = opts.initial_step;
    let n0 = ((top - bottom) / h).ceil() as usize;
    let nodes: Vec<Result<Cx>> = exec.map_range(n0 + 1, |k| f(bottom + h * k as f64));
    let mut sum = Cx::new(0.0, 0.0);
    let mut abs = 0.0;
    for v in nodes {
        let v = v?;
        sum += v;
        abs += v.norm();
    }
    let mut estimate = sum * h;
    let mut count = n0;
    for _ in 0..opts.max_halvings {
        let mids: Vec<Result<Cx>> =
            exec.map_range(count, |k| f(bottom + h * (k as f64 + 0.5)));
        for v in mids {
            let v = v?;
            sum += v;
            abs += v.norm();
        }
        h /= 2.0;
        count *= 2;
        let next = sum * h;
        let scale = abs * h;
        if (next - estimate).norm() <= opts.tol * scale {
            return Ok(next);
        }
        estimate = next;
    }
    Err(Error::NonConvergence(format!(
        "{} trapezoid rule not settled after {} halvings",
        kind.name(),
        opts.max_halvings
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::{phi_series, SeriesConfig};

    fn check(kind: MellinIntegrand, z: UCComplex) {
        let s = phi_series(kind, SeriesConfig::default(), Exec::default()).unwrap();
        let a = s.eval(z, 0).unwrap();
        let b = contour_eval(kind, z).unwrap();
        assert!((a - b).norm() <= 1e-9 * a.norm(), "{kind:?} at {z}: {a} vs {b}");
    }

    #[test]
    fn phi1_at_one() {
        check(MellinIntegrand::Phi1, UCComplex::polar(1.0, 0.0));
    }

    #[test]
    fn phi2_off_axis() {
        check(MellinIntegrand::Phi2, UCComplex::polar(0.7, -PI / 3.0));
    }

    #[test]
    fn phi1_outside_sector() {
        assert!(matches!(
            contour_eval(MellinIntegrand::Phi1, UCComplex::polar(1.0, 3.0 * PI / 4.0)),
            Err(Error::SectorViolation { .. })
        ));
    }
}
