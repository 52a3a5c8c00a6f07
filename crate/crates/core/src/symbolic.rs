//! Polynomials in `pi`, `gamma` (Euler-Mascheroni) and `zeta(3)` with
//! Gaussian-rational coefficients.
//!
//! This is enough to carry Gamma classes, graded Chern characters and the
//! closed-form connection matrices exactly; numbers are produced only by
//! [`SymPoly::eval`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::{q_to_f64, qi, Cx, Q};
use crate::special::Constants;

/// `re + i im` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl GaussQ {
    pub fn new(re: Q, im: Q) -> Self {
        GaussQ { re, im }
    }

    pub fn real(re: Q) -> Self {
        GaussQ { re, im: Q::zero() }
    }

    pub fn i() -> Self {
        GaussQ {
            re: Q::zero(),
            im: Q::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        GaussQ::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        GaussQ::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn to_cx(&self) -> Cx {
        Cx::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
}

/// Exponents of `(pi, gamma, zeta3)`.
pub type Monomial = [u32; 3];

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, GaussQ>,
}

impl SymPoly {
    pub fn constant(c: GaussQ) -> Self {
        let mut p = SymPoly::default();
        p.push([0, 0, 0], c);
        p
    }

    pub fn rational(x: Q) -> Self {
        Self::constant(GaussQ::real(x))
    }

    pub fn int(n: i64) -> Self {
        Self::rational(qi(n))
    }

    pub fn i() -> Self {
        Self::constant(GaussQ::i())
    }

    pub fn monomial(m: Monomial, c: GaussQ) -> Self {
        let mut p = SymPoly::default();
        p.push(m, c);
        p
    }

    pub fn pi() -> Self {
        Self::monomial([1, 0, 0], GaussQ::real(Q::one()))
    }

    pub fn euler_gamma() -> Self {
        Self::monomial([0, 1, 0], GaussQ::real(Q::one()))
    }

    pub fn zeta3() -> Self {
        Self::monomial([0, 0, 1], GaussQ::real(Q::one()))
    }

    /// `zeta(2) = pi^2 / 6`.
    pub fn zeta2() -> Self {
        Self::monomial([2, 0, 0], GaussQ::real(Q::new(1.into(), 6.into())))
    }

    fn push(&mut self, m: Monomial, c: GaussQ) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(|| GaussQ::real(Q::zero()));
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussQ)> {
        self.terms.iter()
    }

    pub fn scale(&self, s: &GaussQ) -> Self {
        let mut out = SymPoly::default();
        for (m, c) in &self.terms {
            out.push(*m, c.mul(s));
        }
        out
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        self.scale(&GaussQ::real(s.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(SymPoly::int(1), |acc, _| &acc * self)
    }

    pub fn eval(&self, k: &Constants) -> Cx {
        self.terms
            .iter()
            .map(|(m, c)| {
                c.to_cx()
                    * k.pi.powi(m[0] as i32)
                    * k.euler_gamma.powi(m[1] as i32)
                    * k.zeta3.powi(m[2] as i32)
            })
            .sum()
    }
}

impl Zero for SymPoly {
    fn zero() -> Self {
        SymPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymPoly {
    fn one() -> Self {
        SymPoly::int(1)
    }
}

impl Add for SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: SymPoly) -> SymPoly {
        &self + &rhs
    }
}

impl<'a> Add<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.push(*m, c.clone());
        }
        out
    }
}

impl AddAssign<&SymPoly> for SymPoly {
    fn add_assign(&mut self, rhs: &SymPoly) {
        for (m, c) in &rhs.terms {
            self.push(*m, c.clone());
        }
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        self.scale_q(&-Q::one())
    }
}

impl Sub for SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: SymPoly) -> SymPoly {
        &self + &(-rhs)
    }
}

impl Mul for SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: SymPoly) -> SymPoly {
        &self * &rhs
    }
}

impl<'a> Mul<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                out.push(m, ca.mul(cb));
            }
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            for (part, unit) in [(&c.re, ""), (&c.im, "i")] {
                if part.is_zero() {
                    continue;
                }
                let sign = if part.is_negative() { "-" } else { "+" };
                if first {
                    if part.is_negative() {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {sign} ")?;
                }
                first = false;
                let mag = part.abs();
                let mut factors: Vec<String> = Vec::new();
                if !mag.is_one() || (unit.is_empty() && *m == [0, 0, 0]) {
                    factors.push(mag.to_string());
                }
                if !unit.is_empty() {
                    factors.push(unit.to_string());
                }
                for (e, name) in m.iter().zip(["pi", "g", "z3"]) {
                    match e {
                        0 => {}
                        1 => factors.push(name.to_string()),
                        _ => factors.push(format!("{name}^{e}")),
                    }
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parses expressions over `+ - * ^ ( )`, integers, `/` by integers, and the
/// symbols `i`, `pi`, `g` (Euler gamma), `z3` (zeta(3)).
impl FromStr for SymPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Sym(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Int(lit.parse().map_err(|_| Error::Parse(lit))?));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Sym(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SymPoly, Error> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SymPoly, Error> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc * self.power()?;
            } else if self.eat('/') {
                match self.peek().cloned() {
                    Some(Tok::Int(d)) if d != 0 => {
                        self.pos += 1;
                        acc = acc.scale_q(&Q::new(1.into(), d.into()));
                    }
                    other => return Err(Error::Parse(format!("division by {other:?}"))),
                }
            } else if matches!(self.peek(), Some(Tok::Sym(_)) | Some(Tok::Op('('))) {
                // implicit multiplication, e.g. "3 i pi"
                acc = acc * self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<SymPoly, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) if e >= 0 => {
                    self.pos += 1;
                    Ok(base.pow(e as u32))
                }
                other => Err(Error::Parse(format!("bad exponent {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SymPoly, Error> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(SymPoly::int(n))
            }
            Some(Tok::Sym(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "i" => Ok(SymPoly::i()),
                    "pi" => Ok(SymPoly::pi()),
                    "g" => Ok(SymPoly::euler_gamma()),
                    "z3" => Ok(SymPoly::zeta3()),
                    _ => Err(Error::Parse(format!("unknown symbol {s:?}"))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn sym(s: &str) -> SymPoly {
    s.parse().expect("valid symbolic literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::constants;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(sym("i*i"), SymPoly::int(-1));
        assert_eq!(sym("(pi + 3 i g)*(pi - 3 i g)"), sym("pi^2 + 9 g^2"));
    }

    #[test]
    fn parse_and_eval() {
        let k = constants();
        let p = sym("-(12 i z3 - 54 i g^3 - 54 g^2 pi + 15 i g pi^2 + pi^3)");
        let expected = -(Cx::new(0.0, 12.0 * k.zeta3) - Cx::new(0.0, 54.0 * k.euler_gamma.powi(3))
            - 54.0 * k.euler_gamma.powi(2) * k.pi
            + Cx::new(0.0, 15.0 * k.euler_gamma * k.pi.powi(2))
            + k.pi.powi(3));
        assert!((p.eval(&k) - expected).norm() < 1e-12);
    }

    #[test]
    fn division_by_integer() {
        assert_eq!(sym("8/3 i pi^3"), sym("i pi^3 * 8 / 3"));
        assert!("pi / g".parse::<SymPoly>().is_err());
    }

    #[test]
    fn display_roundtrip() {
        let p = sym("1 + 3 g - 5/2 i pi^2 z3");
        let q: SymPoly = p.to_string().parse().unwrap();
        assert_eq!(p, q);
    }
}
