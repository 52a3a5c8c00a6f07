//! Fundamental solutions and the monodromy data `S'`, `P`, `S`, `C'`, `C`.

pub mod asymptotics;
pub mod connection;
pub mod constraints;
pub mod fundamental;
pub mod phitop;
pub mod stokes;

use std::f64::consts::PI;

pub use connection::{connection_matrix, ConnectionConfig, ConnectionResult};
pub use constraints::{verify_constraints, ConstraintResiduals};
pub use fundamental::{vector_from_scalar, FundamentalSolutions};
pub use phitop::{phi_top, PhiTopSeries, TopSolution};
pub use stokes::{stokes_matrix, StokesConfig, StokesResult};

use crate::error::Result;
use crate::exec::Exec;
use crate::frame::sector_config;
use crate::solutions::{ScalarSolutions, SeriesConfig, UCComplex};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonodromyConfig {
    pub series: SeriesConfig,
    pub phitop_order: usize,
    pub ell_angle: f64,
    pub stokes: StokesConfig,
    pub connection: ConnectionConfig,
    pub exec: Exec,
}

impl Default for MonodromyConfig {
    fn default() -> Self {
        MonodromyConfig {
            series: SeriesConfig::default(),
            phitop_order: 40,
            ell_angle: PI / 4.0,
            stokes: StokesConfig::default(),
            connection: ConnectionConfig::default(),
            exec: Exec::default(),
        }
    }
}

/// Everything computed on the analytic side.
#[derive(Clone, Debug)]
pub struct MonodromyData {
    pub fundamental: FundamentalSolutions,
    pub top: TopSolution,
    pub stokes: StokesResult,
    pub connection: ConnectionResult,
    /// `Y_R^{-1} Y_L` across `Pi_-` compared with `S'^T`.
    pub pi_minus_residual: f64,
    pub pi_minus_points: Vec<UCComplex>,
}

pub fn fundamental_solutions(cfg: &MonodromyConfig) -> Result<FundamentalSolutions> {
    let scalars = ScalarSolutions::new(cfg.series, cfg.exec)?;
    Ok(FundamentalSolutions::new(scalars, sector_config(cfg.ell_angle)?))
}

pub fn compute(cfg: &MonodromyConfig) -> Result<MonodromyData> {
    let fundamental = fundamental_solutions(cfg)?;
    let top = TopSolution::new(cfg.phitop_order)?;
    let stokes = stokes_matrix(&fundamental, &cfg.stokes, cfg.exec)?;
    let connection = connection_matrix(&fundamental, &top, &stokes.p_matrix(), &cfg.connection, cfg.exec)?;
    // two points of Pi_- lifted to the sheet of Y_L
    let minus = fundamental.sectors.pi_minus;
    let pi_minus_points: Vec<UCComplex> = [0.35, 0.65]
        .iter()
        .map(|t| {
            let arg = minus.lo + t * (minus.hi - minus.lo) + 2.0 * PI;
            UCComplex::polar(cfg.stokes.z0.modulus, arg)
        })
        .collect();
    let pi_minus_residual =
        stokes::minus_sector_residual(&fundamental, &stokes.s_prime, &pi_minus_points)?;
    Ok(MonodromyData {
        fundamental,
        top,
        stokes,
        connection,
        pi_minus_residual,
        pi_minus_points,
    })
}
