use std::f64::consts::PI;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Cx, I};

// Godfrey's g = 607/128, 15-term Lanczos set.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    4.652_362_892_704_858e-5,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_88e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

pub(crate) fn is_pole(z: Cx) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

fn lanczos_ln_gamma(z: Cx) -> Cx {
    let x = z - 1.0;
    let t = x + LANCZOS_G + 0.5;
    let mut series = Cx::new(LANCZOS[0], 0.0);
    for (k, ck) in LANCZOS.iter().enumerate().skip(1) {
        series += *ck / (x + k as f64);
    }
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + series.ln()
}

/// `log sin(pi z)`, stable for large `|Im z|`. Defined up to `2 pi i`.
pub fn ln_sin_pi(z: Cx) -> Cx {
    if z.im.abs() < 16.0 {
        return (PI * z).sin().ln();
    }
    let ln2 = std::f64::consts::LN_2;
    if z.im > 0.0 {
        // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) / (-2i)
        -I * PI * z + (1.0 - (2.0 * I * PI * z).exp()).ln() - Cx::new(ln2, -PI / 2.0)
    } else {
        I * PI * z + (1.0 - (-2.0 * I * PI * z).exp()).ln() - Cx::new(ln2, PI / 2.0)
    }
}

/// Complex log-Gamma, up to an additive multiple of `2 pi i`.
pub fn ln_gamma(z: Cx) -> Result<Cx> {
    if is_pole(z) {
        return Err(Error::GammaPole(z.re));
    }
    if z.re >= 0.5 {
        Ok(lanczos_ln_gamma(z))
    } else {
        Ok(PI.ln() - ln_sin_pi(z) - lanczos_ln_gamma(1.0 - z))
    }
}

pub fn complex_gamma(z: Cx) -> Result<Cx> {
    ln_gamma(z).map(Cx::exp)
}

/// `log Gamma(m + delta)` for integer `m`. The reflection uses
/// `sin(pi (m + delta)) = (-1)^m sin(pi delta)`, so accuracy is kept when
/// `m + delta` sits close to a pole.
pub fn ln_gamma_lattice(m: i64, delta: Cx) -> Cx {
    let z = Cx::new(m as f64, 0.0) + delta;
    if z.re >= 0.5 {
        return lanczos_ln_gamma(z);
    }
    debug_assert!(!delta.is_zero() || m > 0);
    let parity = if m.rem_euclid(2) == 1 {
        Cx::new(0.0, PI)
    } else {
        Cx::zero()
    };
    PI.ln() - (ln_sin_pi(delta) + parity) - lanczos_ln_gamma(1.0 - z)
}
