//! JSON descriptions of catalog functions. Angles travel as exact `(cos, sin)`
//! pairs so rotations by multiples of 45° stay exact.

use serde::{Deserialize, Serialize};

use super::{assemble_polygon_fn, precompose, precompose_affine, sum_fn, ConvexFn, Interval};
use crate::error::{Error, Result};
use crate::num::{serde_qvec, QSqrt2, QVec};
use crate::poly::HRep;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Angle {
    pub cos: QSqrt2,
    pub sin: QSqrt2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FnJson {
    Indicator {
        set: HRep,
    },
    Support {
        set: HRep,
    },
    GaugeRecip {
        set: HRep,
        #[serde(with = "serde_qvec")]
        x0: QVec,
    },
    Interval1d {
        interval: Interval,
    },
    Rockafellar {
        alpha: QSqrt2,
    },
    Halfstrip {
        alpha: QSqrt2,
    },
    /// Either `theta` (with optional `scale`) or an explicit `matrix`.
    Precomposed {
        inner: Box<FnJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta: Option<Angle>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scale: Option<QSqrt2>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Vec<Vec<QSqrt2>>>,
        #[serde(default, with = "serde_qvec")]
        shift: QVec,
    },
    Sum {
        terms: Vec<FnJson>,
    },
    /// `ι_{cl C}` plus the removal terms for the listed boundary pieces.
    Polygon {
        set: HRep,
        #[serde(default)]
        marks: Vec<Mark>,
        #[serde(default)]
        remove: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mark(#[serde(with = "serde_qvec")] pub QVec);

impl FnJson {
    pub fn build(&self) -> Result<ConvexFn> {
        match self {
            FnJson::Indicator { set } => ConvexFn::indicator(set),
            FnJson::Support { set } => ConvexFn::support(set),
            FnJson::GaugeRecip { set, x0 } => ConvexFn::gauge_recip(set.clone(), x0.clone()),
            FnJson::Interval1d { interval } => ConvexFn::interval(interval.clone()),
            FnJson::Rockafellar { alpha } => ConvexFn::rockafellar(alpha.clone()),
            FnJson::Halfstrip { alpha } => ConvexFn::halfstrip(alpha.clone()),
            FnJson::Precomposed { inner, theta, scale, matrix, shift } => {
                let f = inner.build()?;
                let shift = if shift.dim() == 0 { QVec::zeros(f.dim()) } else { shift.clone() };
                match (theta, matrix) {
                    (Some(a), None) => {
                        let c = scale.clone().unwrap_or_else(QSqrt2::one);
                        precompose(f, &a.cos, &a.sin, &shift, &c)
                    }
                    (None, Some(m)) if scale.is_none() => precompose_affine(f, m.clone(), shift),
                    _ => Err(Error::Parse("precomposed needs exactly one of theta (+scale) or matrix".into())),
                }
            }
            FnJson::Sum { terms } => sum_fn(terms.iter().map(FnJson::build).collect::<Result<_>>()?),
            FnJson::Polygon { set, marks, remove } => {
                let marks: Vec<QVec> = marks.iter().map(|m| m.0.clone()).collect();
                Ok(assemble_polygon_fn(set, &marks, remove)?.f)
            }
        }
    }

    pub fn parse(text: &str) -> Result<ConvexFn> {
        serde_json::from_str::<FnJson>(text)?.build()
    }
}
