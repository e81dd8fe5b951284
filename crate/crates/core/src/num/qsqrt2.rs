//! Exact arithmetic in the quadratic field Q(sqrt 2).
//!
//! Rotations by multiples of 45 degrees and the half-diagonals of lattice
//! polygons live here, so compositions built from them stay exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{fmt_q, parse_q, q, Q};
use crate::error::{Error, Result};

/// `rat + irr * sqrt(2)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub rat: Q,
    pub irr: Q,
}

impl QSqrt2 {
    pub fn new(rat: Q, irr: Q) -> Self {
        QSqrt2 { rat, irr }
    }

    pub fn rational(rat: Q) -> Self {
        QSqrt2 { rat, irr: Q::zero() }
    }

    pub fn sqrt2() -> Self {
        QSqrt2 { rat: Q::zero(), irr: Q::one() }
    }

    pub fn zero() -> Self {
        Self::rational(Q::zero())
    }

    pub fn one() -> Self {
        Self::rational(Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.irr.is_zero().then_some(&self.rat)
    }

    /// Exact sign in {-1, 0, 1}.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.rat);
        let sb = sign(&self.irr);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare rat^2 with 2 irr^2.
        let lhs = &self.rat * &self.rat;
        let rhs = q(2) * &self.irr * &self.irr;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn conj(&self) -> Self {
        QSqrt2 { rat: self.rat.clone(), irr: -self.irr.clone() }
    }

    /// Field norm `rat^2 - 2 irr^2`.
    pub fn norm(&self) -> Q {
        &self.rat * &self.rat - q(2) * &self.irr * &self.irr
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero in Q(sqrt 2)");
        QSqrt2 { rat: &self.rat / &n, irr: -&self.irr / &n }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN) + self.irr.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Square root inside the field, when one exists and the value is nonnegative.
    pub fn sqrt(&self) -> Option<Self> {
        match self.signum() {
            -1 => return None,
            0 => return Some(Self::zero()),
            _ => {}
        }
        let a = &self.rat;
        let b = &self.irr;
        let mut candidates = Vec::new();
        if b.is_zero() {
            if let Some(c) = rational_sqrt(a) {
                candidates.push(QSqrt2::rational(c));
            }
            if let Some(d) = rational_sqrt(&(a / q(2))) {
                candidates.push(QSqrt2::new(Q::zero(), d));
            }
        } else {
            // (c + d sqrt2)^2 = a + b sqrt2  =>  d^2 = (a +- sqrt(a^2 - 2b^2)) / 4
            if let Some(disc) = rational_sqrt(&(a * a - q(2) * b * b)) {
                for d2 in [(a + &disc) / q(4), (a - &disc) / q(4)] {
                    if let Some(d) = rational_sqrt(&d2) {
                        if !d.is_zero() {
                            let c = b / (q(2) * &d);
                            candidates.push(QSqrt2::new(c, d));
                        }
                    }
                }
            }
        }
        candidates
            .into_iter()
            .map(|c| c.abs())
            .find(|c| &(c * c) == self)
    }

    /// Parses `"p/q"`, `"p/q*sqrt2"`, `"a+b*sqrt2"`, with `√2` accepted for `sqrt2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().replace('√', "sqrt").replace(' ', "");
        let bad = || Error::Parse(format!("not an element of Q(sqrt2): {s:?}"));
        if !s.contains("sqrt") {
            return Ok(Self::rational(parse_q(&s)?));
        }
        // Split at the last sign that is not the leading one.
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !s[..i].ends_with('/'))
            .map(|(i, _)| i)
            .last();
        let (rat_part, irr_part) = match split {
            Some(i) if s[i..].contains("sqrt") && !s[..i].contains("sqrt") => (&s[..i], &s[i..]),
            _ => ("0", s.as_str()),
        };
        let irr_part = irr_part.strip_prefix('+').unwrap_or(irr_part);
        let coeff = irr_part
            .strip_suffix("*sqrt2")
            .or_else(|| irr_part.strip_suffix("sqrt2"))
            .ok_or_else(bad)?;
        let coeff = match coeff {
            "" => Q::one(),
            "-" => -Q::one(),
            c => parse_q(c)?,
        };
        Ok(QSqrt2::new(parse_q(rat_part)?, coeff))
    }
}

fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", fmt_q(&self.rat));
        }
        if self.rat.is_zero() {
            return write!(f, "{}*sqrt2", fmt_q(&self.irr));
        }
        if self.irr.is_negative() {
            write!(f, "{}-{}*sqrt2", fmt_q(&self.rat), fmt_q(&-self.irr.clone()))
        } else {
            write!(f, "{}+{}*sqrt2", fmt_q(&self.rat), fmt_q(&self.irr))
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<Q> for QSqrt2 {
    fn from(x: Q) -> Self {
        QSqrt2::rational(x)
    }
}

impl From<&Q> for QSqrt2 {
    fn from(x: &Q) -> Self {
        QSqrt2::rational(x.clone())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a QSqrt2> for &'a QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, o: &'a QSqrt2) -> QSqrt2 {
                let f: fn(&QSqrt2, &QSqrt2) -> QSqrt2 = $body;
                f(self, o)
            }
        }
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, o: QSqrt2) -> QSqrt2 {
                (&self).$m(&o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| QSqrt2::new(&a.rat + &b.rat, &a.irr + &b.irr));
forward_binop!(Sub, sub, |a, b| QSqrt2::new(&a.rat - &b.rat, &a.irr - &b.irr));
forward_binop!(Mul, mul, |a, b| QSqrt2::new(
    &a.rat * &b.rat + q(2) * &a.irr * &b.irr,
    &a.rat * &b.irr + &a.irr * &b.rat
));
forward_binop!(Div, div, |a, b| a * &b.inv());

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.rat, -self.irr)
    }
}

impl serde::Serialize for QSqrt2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QSqrt2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = <String as serde::Deserialize>::deserialize(d)?;
        QSqrt2::parse(&raw).map_err(serde::de::Error::custom)
    }
}
