use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Cx, I};

/// A point of the universal cover of `C*`: modulus and an unrestricted
/// argument. Powers and logarithms are taken on the cover, never through a
/// principal branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UCComplex {
    pub modulus: f64,
    pub arg: f64,
}

impl UCComplex {
    pub fn new(modulus: f64, arg: f64) -> Result<Self> {
        if !(modulus > 0.0 && modulus.is_finite()) || !arg.is_finite() {
            return Err(Error::Config(format!(
                "point ({modulus}, {arg}) is not on the universal cover of C*"
            )));
        }
        Ok(UCComplex { modulus, arg })
    }

    /// Panicking constructor for literals known to be valid.
    pub fn polar(modulus: f64, arg: f64) -> Self {
        Self::new(modulus, arg).expect("invalid universal-cover point")
    }

    pub fn ln(self) -> Cx {
        Cx::new(self.modulus.ln(), self.arg)
    }

    pub fn powf(self, alpha: f64) -> Cx {
        Cx::from_polar(self.modulus.powf(alpha), alpha * self.arg)
    }

    pub fn powc(self, alpha: Cx) -> Cx {
        (alpha * self.ln()).exp()
    }

    pub fn to_complex(self) -> Cx {
        Cx::from_polar(self.modulus, self.arg)
    }

    /// `z e^{i theta}` on the cover.
    pub fn rotated(self, theta: f64) -> Self {
        UCComplex {
            modulus: self.modulus,
            arg: self.arg + theta,
        }
    }

    /// `z epsilon^k` with `epsilon = e^{2 pi i / 3}`.
    pub fn rotated_eps(self, k: i32) -> Self {
        self.rotated(2.0 * PI * k as f64 / 3.0)
    }

    pub fn with_modulus(self, modulus: f64) -> Self {
        UCComplex { modulus, ..self }
    }

    /// Multiplication by a positive real.
    pub fn scaled(self, r: f64) -> Self {
        self.with_modulus(self.modulus * r)
    }

    /// The phase factor `e^{i theta}` that relates `rotated(theta)` to `self`.
    pub fn phase(theta: f64) -> Cx {
        (I * theta).exp()
    }
}

impl fmt::Display for UCComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.modulus, self.arg)
    }
}

/// Parses `MOD,ARG`. The argument accepts a plain float or a multiple of pi
/// written as `k*pi`, `pi/k` or `k*pi/m` (e.g. `pi/4`).
impl FromStr for UCComplex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (m, a) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected MOD,ARG, got '{s}'")))?;
        let modulus: f64 = m
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus '{m}'")))?;
        let arg = parse_angle(a.trim())?;
        UCComplex::new(modulus, arg)
    }
}

fn parse_angle(s: &str) -> Result<f64> {
    if let Ok(x) = s.parse::<f64>() {
        return Ok(x);
    }
    let bad = || Error::Parse(format!("bad argument '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (s, 1.0),
    };
    let factor = match num {
        "pi" => 1.0,
        "-pi" => -1.0,
        _ => {
            let k = num
                .strip_suffix("*pi")
                .or_else(|| num.strip_suffix("pi"))
                .ok_or_else(bad)?;
            k.trim().parse::<f64>().map_err(|_| bad())?
        }
    };
    Ok(factor * PI / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_adds_exactly() {
        let z = UCComplex::polar(2.0, 0.3);
        assert_eq!(z.rotated_eps(1).arg, 0.3 + 2.0 * PI / 3.0);
        assert_eq!(z.rotated_eps(3).modulus, 2.0);
    }

    #[test]
    fn half_powers_follow_the_cover() {
        let z = UCComplex::polar(4.0, 0.0);
        let w = z.rotated(2.0 * PI);
        assert!((z.powf(0.5) - 2.0).norm() < 1e-15);
        assert!((w.powf(0.5) + 2.0).norm() < 1e-14);
        assert!((w.to_complex() - z.to_complex()).norm() < 1e-14);
    }

    #[test]
    fn parsing() {
        let z: UCComplex = "2,pi/4".parse().unwrap();
        assert_eq!(z, UCComplex::polar(2.0, PI / 4.0));
        let z: UCComplex = "0.1, 0.7853981633974483".parse().unwrap();
        assert_eq!(z.arg, PI / 4.0);
        let z: UCComplex = "1,-3*pi/4".parse().unwrap();
        assert_eq!(z.arg, -3.0 * PI / 4.0);
        assert!("0,1".parse::<UCComplex>().is_err());
        assert!("1;1".parse::<UCComplex>().is_err());
    }
}
