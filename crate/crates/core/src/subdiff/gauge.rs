//! `x ↦ 1 / (1 − ρ(x − x₀))` for the gauge `ρ` of an open polyhedron shifted to the origin.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::q2::Q2Set;
use super::SubVal;
use crate::error::{Error, Result};
use crate::ncset::NcSet;
use crate::num::{QSqrt2, QVec, Q};
use crate::poly::{strict_feasible, HRep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gauge {
    pub set: HRep,
    pub x0: QVec,
    /// `a_i / (b_i − a_i·x₀)`: the gauge is `max(0, max_i ⟨ℓ_i, y⟩)`.
    #[serde(skip)]
    levels: Vec<QVec>,
}

impl Gauge {
    pub fn new(set: HRep, x0: QVec) -> Result<Self> {
        if !set.eq.is_empty() || !set.le.is_empty() || strict_feasible(&set).is_none() {
            return Err(Error::NotFullDim);
        }
        if x0.dim() != set.dim {
            return Err(Error::DimensionMismatch { expected: set.dim, got: x0.dim() });
        }
        if !set.contains(&x0) {
            return Err(Error::X0NotInterior);
        }
        let mut levels = Vec::with_capacity(set.lt.len());
        for r in &set.lt {
            let beta = &r.b - r.a.dot(&x0);
            if !beta.is_positive() {
                return Err(Error::Unnormalizable);
            }
            levels.push(r.a.scale(&(Q::from_integer(1.into()) / beta)));
        }
        Ok(Gauge { set, x0, levels })
    }

    /// Rebuilds the cached levels after deserialization.
    pub fn revalidate(self) -> Result<Self> {
        Gauge::new(self.set, self.x0)
    }

    fn rho_f64(&self, x: &[f64]) -> f64 {
        let y: Vec<f64> = x.iter().zip(self.x0.to_f64()).map(|(a, b)| a - b).collect();
        self.levels
            .iter()
            .map(|l| l.to_f64().iter().zip(&y).map(|(a, b)| a * b).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let rho = self.rho_f64(x);
        if rho >= 1.0 {
            f64::INFINITY
        } else {
            1.0 / (1.0 - rho)
        }
    }

    /// Level values `⟨ℓ_i, x − x₀⟩` and their positive part `ρ`, exactly.
    fn levels_at(&self, x: &[QSqrt2]) -> (Vec<QSqrt2>, QSqrt2) {
        let y: Vec<QSqrt2> = x.iter().zip(self.x0.iter()).map(|(a, b)| a - &QSqrt2::from(b)).collect();
        let vals: Vec<QSqrt2> = self
            .levels
            .iter()
            .map(|l| l.iter().zip(&y).fold(QSqrt2::zero(), |acc, (a, b)| acc + &QSqrt2::from(a) * b))
            .collect();
        let rho = vals.iter().cloned().fold(QSqrt2::zero(), |m, v| if v > m { v } else { m });
        (vals, rho)
    }

    pub fn eval_q(&self, x: &[QSqrt2]) -> f64 {
        let (_, rho) = self.levels_at(x);
        if rho >= QSqrt2::one() {
            f64::INFINITY
        } else {
            1.0 / (1.0 - rho.to_f64())
        }
    }

    /// `∂ρ / (1 − ρ)²`, with `∂ρ` the hull of the active level gradients (and `0` when `ρ = 0`).
    pub fn subdiff(&self, x: &[QSqrt2]) -> SubVal {
        let (vals, rho) = self.levels_at(x);
        if rho >= QSqrt2::one() {
            return SubVal::empty();
        }
        let w = 1.0 / (1.0 - rho.to_f64()).powi(2);
        let mut points: Vec<Vec<f64>> = vals
            .iter()
            .zip(&self.levels)
            .filter(|(v, _)| **v == rho)
            .map(|(_, l)| l.to_f64().iter().map(|c| c * w).collect())
            .collect();
        if rho.is_zero() {
            points.push(vec![0.0; self.x0.dim()]);
        }
        SubVal::hull(points)
    }

    pub fn dom(&self) -> Q2Set {
        Q2Set::from_ncset(&NcSet::from_piece(self.set.clone()))
    }
}
