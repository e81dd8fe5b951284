//! Convex functions on the line whose subdifferential domain is a prescribed interval.

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::q2::{Q2Piece, Q2Row, Q2Set};
use super::SubVal;
use crate::error::{Error, Result};
use crate::num::{serde_q, QSqrt2, Q};

/// An interval with optional infinite ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Interval {
    /// `[lo, hi]`, either end possibly infinite.
    Closed {
        #[serde(default, with = "opt_q")]
        lo: Option<Q>,
        #[serde(default, with = "opt_q")]
        hi: Option<Q>,
    },
    /// `(lo, hi)`, either end possibly infinite.
    Open {
        #[serde(default, with = "opt_q")]
        lo: Option<Q>,
        #[serde(default, with = "opt_q")]
        hi: Option<Q>,
    },
    /// `(lo, hi]`.
    LeftOpen {
        #[serde(with = "serde_q")]
        lo: Q,
        #[serde(with = "serde_q")]
        hi: Q,
    },
    /// `[lo, hi)`.
    RightOpen {
        #[serde(with = "serde_q")]
        lo: Q,
        #[serde(with = "serde_q")]
        hi: Q,
    },
}

mod opt_q {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::num::{fmt_q, parse_q, Q};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_str(&fmt_q(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|r| parse_q(&r).map_err(serde::de::Error::custom)).transpose()
    }
}

impl Interval {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = match self {
            Interval::Closed { lo, hi } | Interval::Open { lo, hi } => (lo.clone(), hi.clone()),
            Interval::LeftOpen { lo, hi } | Interval::RightOpen { lo, hi } => (Some(lo.clone()), Some(hi.clone())),
        };
        match (lo, hi) {
            (Some(a), Some(b)) if a >= b => Err(Error::BadInterval(format!("need lo < hi, got [{a}, {b}]"))),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let f = |q: &Q| q.to_f64().unwrap_or(f64::NAN);
        match self {
            Interval::Closed { lo, hi } => {
                let ok = lo.as_ref().is_none_or(|a| x >= f(a)) && hi.as_ref().is_none_or(|b| x <= f(b));
                if ok {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Interval::Open { lo: Some(a), hi: None } => {
                let d = x - f(a);
                if d > 0.0 {
                    1.0 / d
                } else {
                    f64::INFINITY
                }
            }
            Interval::Open { lo: None, hi: Some(b) } => {
                let d = f(b) - x;
                if d > 0.0 {
                    1.0 / d
                } else {
                    f64::INFINITY
                }
            }
            Interval::Open { lo: None, hi: None } => 0.0,
            Interval::Open { lo: Some(a), hi: Some(b) } => {
                let (a, b) = (f(a), f(b));
                if x <= a || x >= b {
                    return f64::INFINITY;
                }
                let theta = PI * (x - a) / (b - a) - PI / 2.0;
                -((b - a) / PI) * theta.cos().ln()
            }
            Interval::LeftOpen { lo, hi } => {
                let (a, b) = (f(lo), f(hi));
                if x <= a || x > b {
                    return f64::INFINITY;
                }
                -((x - a).ln() - x / (b - a))
            }
            Interval::RightOpen { lo, hi } => {
                let (a, b) = (f(lo), f(hi));
                if x < a || x >= b {
                    return f64::INFINITY;
                }
                -((b - x).ln() + x / (b - a))
            }
        }
    }

    pub fn subdiff(&self, x: &QSqrt2) -> SubVal {
        let at = |q: &Q| x.cmp(&QSqrt2::from(q));
        let xf = x.to_f64();
        let f = |q: &Q| q.to_f64().unwrap_or(f64::NAN);
        use std::cmp::Ordering::*;
        match self {
            Interval::Closed { lo, hi } => {
                let lo_o = lo.as_ref().map(at);
                let hi_o = hi.as_ref().map(at);
                if lo_o == Some(Less) || hi_o == Some(Greater) {
                    return SubVal::empty();
                }
                let mut v = SubVal::point(vec![0.0]);
                if lo_o == Some(Equal) {
                    v.rays.push(vec![-1.0]);
                }
                if hi_o == Some(Equal) {
                    v.rays.push(vec![1.0]);
                }
                v
            }
            Interval::Open { lo, hi } => {
                if lo.as_ref().is_some_and(|a| at(a) != Greater) || hi.as_ref().is_some_and(|b| at(b) != Less) {
                    return SubVal::empty();
                }
                match (lo, hi) {
                    (None, None) => SubVal::point(vec![0.0]),
                    (Some(a), None) => SubVal::point(vec![-1.0 / (xf - f(a)).powi(2)]),
                    (None, Some(b)) => SubVal::point(vec![1.0 / (f(b) - xf).powi(2)]),
                    (Some(a), Some(b)) => {
                        let (a, b) = (f(a), f(b));
                        SubVal::point(vec![(PI * (xf - a) / (b - a) - PI / 2.0).tan()])
                    }
                }
            }
            Interval::LeftOpen { lo, hi } => match (at(lo), at(hi)) {
                (Greater, Less) => SubVal::point(vec![1.0 / (f(lo) - xf) - 1.0 / (f(lo) - f(hi))]),
                (Greater, Equal) => SubVal { points: vec![vec![0.0]], rays: vec![vec![1.0]] },
                _ => SubVal::empty(),
            },
            Interval::RightOpen { lo, hi } => match (at(lo), at(hi)) {
                (Greater, Less) => SubVal::point(vec![1.0 / (f(hi) - xf) - 1.0 / (f(hi) - f(lo))]),
                (Equal, Less) => SubVal { points: vec![vec![0.0]], rays: vec![vec![-1.0]] },
                _ => SubVal::empty(),
            },
        }
    }

    pub fn dom(&self) -> Q2Set {
        let le_hi = |b: &Q| Q2Row::new(vec![QSqrt2::rational(crate::num::q(1))], QSqrt2::from(b));
        let ge_lo = |a: &Q| Q2Row::new(vec![QSqrt2::rational(crate::num::q(-1))], QSqrt2::from(&-a.clone()));
        let mut p = Q2Piece::default();
        match self {
            Interval::Closed { lo, hi } => {
                p.le.extend(lo.iter().map(ge_lo));
                p.le.extend(hi.iter().map(le_hi));
            }
            Interval::Open { lo, hi } => {
                p.lt.extend(lo.iter().map(ge_lo));
                p.lt.extend(hi.iter().map(le_hi));
            }
            Interval::LeftOpen { lo, hi } => {
                p.lt.push(ge_lo(lo));
                p.le.push(le_hi(hi));
            }
            Interval::RightOpen { lo, hi } => {
                p.le.push(ge_lo(lo));
                p.lt.push(le_hi(hi));
            }
        }
        Q2Set { dim: 1, pieces: vec![p] }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Interval::Closed { .. } | Interval::Open { lo: None, hi: None })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qr};

    fn at(v: Q) -> QSqrt2 {
        QSqrt2::rational(v)
    }

    #[test]
    fn ray_case_slope() {
        let f = Interval::Open { lo: Some(q(0)), hi: None };
        assert_eq!(f.subdiff(&at(q(2))).points, vec![vec![-0.25]]);
        assert!(f.subdiff(&at(q(0))).is_empty());
    }

    #[test]
    fn log_cosine_case() {
        let f = Interval::Open { lo: Some(q(0)), hi: Some(q(1)) };
        assert!(f.eval(0.5).abs() < 1e-15);
        assert!(f.subdiff(&at(qr(1, 2))).points[0][0].abs() < 1e-15);
        assert!(f.subdiff(&at(q(1))).is_empty());
    }

    #[test]
    fn half_open_endpoint_is_a_ray() {
        let f = Interval::LeftOpen { lo: q(0), hi: q(1) };
        let v = f.subdiff(&at(q(1)));
        assert_eq!((v.points, v.rays), (vec![vec![0.0]], vec![vec![1.0]]));
        assert!(f.subdiff(&at(q(0))).is_empty());
        let g = Interval::RightOpen { lo: q(0), hi: q(1) };
        assert_eq!(g.subdiff(&at(q(0))).rays, vec![vec![-1.0]]);
    }

    #[test]
    fn reversed_ends_rejected() {
        assert!(Interval::Open { lo: Some(q(1)), hi: Some(q(0)) }.validate().is_err());
    }
}
