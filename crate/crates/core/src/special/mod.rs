//! Complex Gamma, constants, and Laurent data of the Mellin-Barnes
//! integrands at their poles.

mod gamma;
mod laurent;

pub use gamma::{complex_gamma, ln_gamma, ln_gamma_lattice, ln_sin_pi};
pub use laurent::{laurent_blocks, laurent_coefficients, LaurentBlock, MellinIntegrand};

/// Mathematical constants at working (double) precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub pi: f64,
    pub euler_gamma: f64,
    pub zeta2: f64,
    pub zeta3: f64,
}

pub fn constants() -> Constants {
    Constants {
        pi: std::f64::consts::PI,
        euler_gamma: 0.577_215_664_901_532_9,
        zeta2: std::f64::consts::PI * std::f64::consts::PI / 6.0,
        zeta3: 1.202_056_903_159_594_3,
    }
}
