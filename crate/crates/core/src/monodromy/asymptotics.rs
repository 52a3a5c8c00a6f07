//! Large-`|z|` behaviour of the columns: `y_{4k}(z) e^{-u_k z} -> c_k`.
//!
//! Each column is sampled along the direction in which its own exponential
//! dominates all others in the same sector, so the value is not buried under
//! cancellation. Column 1 (`u_1 = 0`) is computed from the contour integral
//! of `phi2`, which carries no exponential cancellation on the positive axis.

use std::f64::consts::PI;

use super::fundamental::{k2, vector_from_scalar, FundamentalSolutions};
use crate::cohomology::DIM;
use crate::error::Result;
use crate::frame::{canonical_coordinates, psi_first_column};
use crate::linalg::{c, Cx};
use crate::solutions::{contour_eval, UCComplex};
use crate::special::MellinIntegrand;

pub const DEFAULT_MODULI: [f64; 3] = [6.0, 9.0, 12.0];

/// Series order needed to evaluate the dominant columns at `|z| = 12`.
pub const ASYMPTOTIC_SERIES_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct ColumnAsymptotics {
    /// Column index from 1.
    pub column: usize,
    pub arg: f64,
    pub method: &'static str,
    pub moduli: Vec<f64>,
    /// `y_{4k}(z) e^{-u_k z} / c_k` at each modulus.
    pub ratios: Vec<Cx>,
    /// `|ratio - 1|`
    pub deviations: Vec<f64>,
    /// Least-squares slope of `log deviation` against `log |z|`.
    pub slope: f64,
}

pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `(column, arg, method)`: the direction where `u_k z` is real and positive
/// (or the positive axis for `u_1 = 0`), inside the sector of the matrix used.
pub const DIRECTIONS: [(usize, f64, &str); DIM] = [
    (1, 0.0, "contour phi2"),
    (2, 0.0, "Y_R series"),
    (3, 2.0 * PI / 3.0, "Y_L series"),
    (4, -2.0 * PI / 3.0, "Y_R series"),
];

fn last_component(fs: &FundamentalSolutions, column: usize, z: UCComplex) -> Result<Cx> {
    match column {
        1 => Ok(c(k2(), 0.0) * z.powf(1.5) * contour_eval(MellinIntegrand::Phi2, z)?),
        3 => {
            fs.y_left(z)?; // sector check
            Ok(vector_from_scalar(&fs.left[2], z)?[3])
        }
        k => {
            fs.y_right(z)?;
            Ok(vector_from_scalar(&fs.right[k - 1], z)?[3])
        }
    }
}

pub fn column_asymptotics(fs: &FundamentalSolutions, moduli: &[f64]) -> Result<Vec<ColumnAsymptotics>> {
    let u = canonical_coordinates();
    let ck = psi_first_column();
    DIRECTIONS
        .iter()
        .map(|&(column, arg, method)| {
            let mut ratios = Vec::new();
            let mut deviations = Vec::new();
            for &m in moduli {
                let z = UCComplex::polar(m, arg);
                let y = last_component(fs, column, z)?;
                let r = y * (-u[column - 1] * z.to_complex()).exp() / ck[column - 1];
                ratios.push(r);
                deviations.push((r - 1.0).norm());
            }
            Ok(ColumnAsymptotics {
                column,
                arg,
                method,
                moduli: moduli.to_vec(),
                slope: loglog_slope(moduli, &deviations),
                ratios,
                deviations,
            })
        })
        .collect()
}
