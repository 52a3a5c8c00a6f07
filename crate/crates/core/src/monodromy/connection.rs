//! Central connection matrix `C' = Y_top^{-1} Y_R` near `z = 0`.

use super::fundamental::FundamentalSolutions;
use super::phitop::TopSolution;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{inverse, max_abs, max_abs_diff, solve, CMatrix};
use crate::solutions::UCComplex;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConnectionConfig {
    pub z0: UCComplex,
    /// Further radii (same argument) used for the stability check.
    pub radii: [f64; 2],
    pub stability_tol: f64,
    /// Point not used for fitting, for the held-out residual.
    pub held_out: UCComplex,
}

impl Default for ConnectionConfig {
    fn default() -> Self {
        ConnectionConfig {
            z0: UCComplex::polar(0.1, std::f64::consts::FRAC_PI_4),
            radii: [0.05, 0.2],
            stability_tol: 1e-9,
            held_out: UCComplex::polar(0.15, 0.27 * std::f64::consts::PI),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConnectionResult {
    pub points: Vec<UCComplex>,
    pub c_prime: CMatrix,
    pub c: CMatrix,
    pub stability_spread: f64,
    /// `max |Y_R - Y_top C'|` at the held-out point, relative to `max |Y_R|`.
    pub held_out_residual: f64,
}

pub fn connection_at(fs: &FundamentalSolutions, top: &TopSolution, z: UCComplex) -> Result<CMatrix> {
    solve(&top.eval(z)?, &fs.y_right(z)?, "Y_top")
}

pub fn connection_matrix(
    fs: &FundamentalSolutions,
    top: &TopSolution,
    p: &CMatrix,
    cfg: &ConnectionConfig,
    exec: Exec,
) -> Result<ConnectionResult> {
    let mut points = vec![cfg.z0];
    points.extend(cfg.radii.iter().map(|r| cfg.z0.with_modulus(*r)));
    let mats: Vec<CMatrix> = exec
        .map(&points, |z| connection_at(fs, top, *z))
        .into_iter()
        .collect::<Result<_>>()?;
    let spread = mats
        .iter()
        .skip(1)
        .map(|m| max_abs_diff(m, &mats[0]))
        .fold(0.0, f64::max);
    if spread > cfg.stability_tol {
        return Err(Error::NotConstant {
            what: "C'",
            spread,
            tol: cfg.stability_tol,
        });
    }
    let c_prime = mats[0].clone();
    let c = &c_prime * inverse(p, "P")?;
    let yr = fs.y_right(cfg.held_out)?;
    let held_out_residual = max_abs_diff(&yr, &(top.eval(cfg.held_out)? * &c_prime)) / max_abs(&yr);
    Ok(ConnectionResult {
        points,
        c_prime,
        c,
        stability_spread: spread,
        held_out_residual,
    })
}
