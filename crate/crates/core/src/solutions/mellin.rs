use std::f64::consts::PI;

use super::logseries::{LogSeries, LOG_DEGREE};
use crate::error::Result;
use crate::exec::Exec;
use crate::linalg::{c, Cx};
use crate::special::{laurent_blocks, MellinIntegrand};

/// Truncation and quadrature parameters for the residue series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesConfig {
    pub order: usize,
    pub radius: f64,
    pub nodes: usize,
}

pub const DEFAULT_ORDER: usize = 40;

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            order: DEFAULT_ORDER,
            radius: 0.25,
            nodes: 256,
        }
    }
}

impl SeriesConfig {
    pub fn with_order(order: usize) -> Self {
        SeriesConfig {
            order,
            ..Self::default()
        }
    }
}

/// Residue expansion `2 pi i sum_n res_{s=-n} g(s) z^{-3s}` of the
/// Mellin-Barnes solution. With `z^{-3s} = z^{3n} sum_j (-3 log z)^j (s+n)^j / j!`
/// the `(log z)^j` coefficient of block `n` is `2 pi i L[3-j] (-3)^j / j!`.
pub fn phi_series(kind: MellinIntegrand, cfg: SeriesConfig, exec: Exec) -> Result<LogSeries> {
    let laurent = laurent_blocks(kind, cfg.order, cfg.radius, cfg.nodes, exec)?;
    let two_pi_i = c(0.0, 2.0 * PI);
    let blocks = laurent
        .iter()
        .map(|b| {
            let mut out = [Cx::new(0.0, 0.0); LOG_DEGREE];
            let mut w = 1.0;
            for (j, o) in out.iter_mut().enumerate() {
                if j > 0 {
                    w *= -3.0 / j as f64;
                }
                *o = two_pi_i * b.coeffs[3 - j] * w;
            }
            out
        })
        .collect();
    Ok(LogSeries::new(0.0, blocks))
}
