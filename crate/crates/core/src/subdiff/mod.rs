//! Closed-form convex functions whose subdifferential domains are prescribed
//! nearly convex sets, together with the combinators that build new ones.

mod catalog;
mod gauge;
mod interval;
mod json;
mod polygon;
mod q2;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncset::{self, NcSet};
use crate::num::{QSqrt2, QVec, Q};
use crate::poly::{self, canonical_closed, hrep_to_vrep, HRep, Row, VRep};

pub use catalog::{
    halfstrip_dom, halfstrip_eval, halfstrip_subdiff, rockafellar_conjugate, rockafellar_dom, rockafellar_eval,
    rockafellar_range, rockafellar_subdiff,
};
pub use gauge::Gauge;
pub use interval::Interval;
pub use json::{Angle, FnJson};
pub use polygon::{
    assemble_polygon_fn, ncpolygon, ncpolygon_golden, ncpolygon_region, polygon_edges, project_finite, Assembly,
    Edge, EdgePiece,
};
pub use q2::{apply_affine, Q2Piece, Q2Row, Q2Set};

/// `conv(points) + cone(rays)` with floating coordinates. Lines appear as a
/// pair of opposite rays.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SubVal {
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub rays: Vec<Vec<f64>>,
}

impl SubVal {
    pub fn empty() -> Self {
        SubVal::default()
    }

    pub fn point(p: Vec<f64>) -> Self {
        SubVal { points: vec![p], rays: vec![] }
    }

    pub fn hull(points: Vec<Vec<f64>>) -> Self {
        SubVal { points, rays: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn minkowski(&self, o: &SubVal) -> SubVal {
        if self.is_empty() || o.is_empty() {
            return SubVal::empty();
        }
        let mut points = Vec::new();
        for p in &self.points {
            for q in &o.points {
                let s: Vec<f64> = p.iter().zip(q).map(|(a, b)| a + b).collect();
                if !points.contains(&s) {
                    points.push(s);
                }
            }
        }
        let mut rays = self.rays.clone();
        for r in &o.rays {
            if !rays.contains(r) {
                rays.push(r.clone());
            }
        }
        SubVal { points, rays }
    }

    /// Image under `u ↦ Mᵀ u`, where `m` holds the rows of `M`.
    pub fn transform(&self, m: &[Vec<f64>]) -> SubVal {
        let n = m.first().map_or(0, Vec::len);
        let adj = |u: &Vec<f64>| -> Vec<f64> {
            (0..n).map(|j| m.iter().zip(u).map(|(row, ui)| row[j] * ui).sum()).collect()
        };
        SubVal { points: self.points.iter().map(adj).collect(), rays: self.rays.iter().map(adj).collect() }
    }

    /// Points, and each point moved one unit along each ray: enough elements
    /// for checks that are linear in `u`.
    pub fn probes(&self) -> Vec<Vec<f64>> {
        let mut out = self.points.clone();
        for p in &self.points {
            for r in &self.rays {
                out.push(p.iter().zip(r).map(|(a, b)| a + b).collect());
            }
        }
        out
    }
}

/// A proper lower semicontinuous convex function from the supported catalog.
#[derive(Clone, Debug)]
pub enum ConvexFn {
    /// `ι_C` of a closed polyhedron, kept in canonical form.
    Indicator { set: HRep, gens: VRep },
    /// `σ_C` of a nonempty closed polyhedron.
    Support { set: HRep, gens: VRep },
    GaugeRecip(Gauge),
    Interval1d(Interval),
    Rockafellar { alpha: QSqrt2 },
    Halfstrip { alpha: QSqrt2 },
    /// `x ↦ inner(M (x − shift))`.
    Precomposed { inner: Box<ConvexFn>, matrix: Vec<Vec<QSqrt2>>, shift: QVec },
    Sum(Vec<ConvexFn>),
}

fn lift(x: &QVec) -> Vec<QSqrt2> {
    x.iter().map(QSqrt2::from).collect()
}

fn to_q(x: &[f64]) -> Option<QVec> {
    x.iter().map(|v| Q::from_float(*v)).collect::<Option<Vec<_>>>().map(QVec)
}

fn dot_q2(a: &QVec, x: &[QSqrt2]) -> QSqrt2 {
    a.iter().zip(x).fold(QSqrt2::zero(), |acc, (ai, xi)| acc + &QSqrt2::from(ai) * xi)
}

fn to_f64_matrix(m: &[Vec<QSqrt2>]) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.iter().map(QSqrt2::to_f64).collect()).collect()
}

/// Best value of `⟨x, ·⟩` over generators, or `None` when unbounded.
fn support_q2(gens: &VRep, x: &[QSqrt2]) -> Option<(QSqrt2, Vec<usize>)> {
    if gens.lines.iter().any(|l| !dot_q2(l, x).is_zero()) || gens.rays.iter().any(|r| dot_q2(r, x).signum() > 0) {
        return None;
    }
    let vals: Vec<QSqrt2> = gens.points.iter().map(|p| dot_q2(p, x)).collect();
    let best = vals.iter().max()?.clone();
    let at = (0..vals.len()).filter(|&i| vals[i] == best).collect();
    Some((best, at))
}

fn holds(r: &Row, x: &[QSqrt2]) -> std::cmp::Ordering {
    dot_q2(&r.a, x).cmp(&QSqrt2::from(&r.b))
}

impl ConvexFn {
    pub fn indicator(c: &HRep) -> Result<Self> {
        if !c.lt.is_empty() {
            return Err(Error::BadParameter("indicator needs a closed polyhedron".into()));
        }
        if poly::is_empty(c) {
            return Err(Error::EmptySet);
        }
        let set = canonical_closed(c);
        let gens = hrep_to_vrep(&set);
        Ok(ConvexFn::Indicator { set, gens })
    }

    pub fn support(c: &HRep) -> Result<Self> {
        if poly::is_empty(c) {
            return Err(Error::EmptySet);
        }
        let set = canonical_closed(c);
        let gens = hrep_to_vrep(&set);
        Ok(ConvexFn::Support { set, gens })
    }

    pub fn gauge_recip(set: HRep, x0: QVec) -> Result<Self> {
        Ok(ConvexFn::GaugeRecip(Gauge::new(set, x0)?))
    }

    pub fn interval(iv: Interval) -> Result<Self> {
        iv.validate()?;
        Ok(ConvexFn::Interval1d(iv))
    }

    pub fn rockafellar(alpha: QSqrt2) -> Result<Self> {
        if alpha.signum() <= 0 {
            return Err(Error::BadParameter(format!("rockafellar needs alpha > 0, got {alpha}")));
        }
        Ok(ConvexFn::Rockafellar { alpha })
    }

    pub fn halfstrip(alpha: QSqrt2) -> Result<Self> {
        if alpha.signum() < 0 {
            return Err(Error::BadParameter(format!("halfstrip needs alpha >= 0, got {alpha}")));
        }
        Ok(ConvexFn::Halfstrip { alpha })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConvexFn::Indicator { .. } => "indicator",
            ConvexFn::Support { .. } => "support",
            ConvexFn::GaugeRecip(_) => "gauge_recip",
            ConvexFn::Interval1d(_) => "interval1d",
            ConvexFn::Rockafellar { .. } => "rockafellar",
            ConvexFn::Halfstrip { .. } => "halfstrip",
            ConvexFn::Precomposed { .. } => "precomposed",
            ConvexFn::Sum(_) => "sum",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexFn::Indicator { set, .. } | ConvexFn::Support { set, .. } => set.dim,
            ConvexFn::GaugeRecip(g) => g.x0.dim(),
            ConvexFn::Interval1d(_) => 1,
            ConvexFn::Rockafellar { .. } | ConvexFn::Halfstrip { .. } => 2,
            ConvexFn::Precomposed { shift, .. } => shift.dim(),
            ConvexFn::Sum(fs) => fs[0].dim(),
        }
    }

    pub fn is_polyhedral(&self) -> bool {
        match self {
            ConvexFn::Indicator { .. } | ConvexFn::Support { .. } => true,
            ConvexFn::Interval1d(iv) => matches!(iv, Interval::Closed { .. }),
            ConvexFn::Precomposed { inner, .. } => inner.is_polyhedral(),
            ConvexFn::Sum(fs) => fs.iter().all(ConvexFn::is_polyhedral),
            _ => false,
        }
    }

    /// Floating-point evaluation; `+∞` outside the domain.
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            ConvexFn::Indicator { set, .. } => match to_q(x) {
                Some(xq) if set.contains(&xq) => 0.0,
                _ => f64::INFINITY,
            },
            ConvexFn::Support { gens, .. } => match to_q(x) {
                Some(xq) => support_q2(gens, &lift(&xq)).map_or(f64::INFINITY, |(v, _)| v.to_f64()),
                None => f64::INFINITY,
            },
            ConvexFn::GaugeRecip(g) => g.eval(x),
            ConvexFn::Interval1d(iv) => iv.eval(x[0]),
            ConvexFn::Rockafellar { alpha } => rockafellar_eval(alpha.to_f64(), x),
            ConvexFn::Halfstrip { alpha } => halfstrip_eval(alpha.to_f64(), x),
            ConvexFn::Precomposed { inner, matrix, shift } => {
                let d: Vec<f64> = x.iter().zip(shift.to_f64()).map(|(a, b)| a - b).collect();
                let y: Vec<f64> = to_f64_matrix(matrix)
                    .iter()
                    .map(|row| row.iter().zip(&d).map(|(m, v)| m * v).sum())
                    .collect();
                inner.eval(&y)
            }
            ConvexFn::Sum(fs) => fs.iter().map(|f| f.eval(x)).sum(),
        }
    }

    /// Evaluation with the domain test done exactly.
    pub fn eval_q(&self, x: &[QSqrt2]) -> f64 {
        let approx = || x.iter().map(QSqrt2::to_f64).collect::<Vec<_>>();
        match self {
            ConvexFn::Indicator { set, .. } => {
                let ok = set.eq.iter().all(|r| holds(r, x).is_eq()) && set.le.iter().all(|r| holds(r, x).is_le());
                if ok {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            ConvexFn::Support { gens, .. } => support_q2(gens, x).map_or(f64::INFINITY, |(v, _)| v.to_f64()),
            ConvexFn::GaugeRecip(g) => g.eval_q(x),
            ConvexFn::Interval1d(iv) => {
                if iv.dom().contains(x) {
                    iv.eval(x[0].to_f64())
                } else {
                    f64::INFINITY
                }
            }
            ConvexFn::Rockafellar { .. } | ConvexFn::Halfstrip { .. } => {
                if x[0].signum() < 0 {
                    f64::INFINITY
                } else {
                    let mut y = approx();
                    y[0] = y[0].max(0.0);
                    self.eval(&y)
                }
            }
            ConvexFn::Precomposed { inner, matrix, shift } => inner.eval_q(&apply_affine(matrix, shift, x)),
            ConvexFn::Sum(fs) => fs.iter().map(|f| f.eval_q(x)).sum(),
        }
    }

    /// `∂f(x)`, with every case boundary decided exactly.
    pub fn subdiff_q(&self, x: &[QSqrt2]) -> SubVal {
        match self {
            ConvexFn::Indicator { set, .. } => {
                if !set.eq.iter().all(|r| holds(r, x).is_eq()) || !set.le.iter().all(|r| holds(r, x).is_le()) {
                    return SubVal::empty();
                }
                let mut rays = Vec::new();
                for r in &set.eq {
                    rays.push(r.a.to_f64());
                    rays.push(r.a.neg().to_f64());
                }
                rays.extend(set.le.iter().filter(|r| holds(r, x).is_eq()).map(|r| r.a.to_f64()));
                SubVal { points: vec![vec![0.0; set.dim]], rays }
            }
            ConvexFn::Support { gens, .. } => {
                let Some((_, at)) = support_q2(gens, x) else {
                    return SubVal::empty();
                };
                let points = at.iter().map(|&i| gens.points[i].to_f64()).collect();
                let mut rays: Vec<Vec<f64>> =
                    gens.rays.iter().filter(|r| dot_q2(r, x).is_zero()).map(QVec::to_f64).collect();
                for l in &gens.lines {
                    rays.push(l.to_f64());
                    rays.push(l.neg().to_f64());
                }
                SubVal { points, rays }
            }
            ConvexFn::GaugeRecip(g) => g.subdiff(x),
            ConvexFn::Interval1d(iv) => iv.subdiff(&x[0]),
            ConvexFn::Rockafellar { alpha } => rockafellar_subdiff(alpha, x),
            ConvexFn::Halfstrip { alpha } => halfstrip_subdiff(alpha, x),
            ConvexFn::Precomposed { inner, matrix, shift } => {
                inner.subdiff_q(&apply_affine(matrix, shift, x)).transform(&to_f64_matrix(matrix))
            }
            ConvexFn::Sum(fs) => {
                let mut acc = fs[0].subdiff_q(x);
                for f in &fs[1..] {
                    if acc.is_empty() {
                        break;
                    }
                    acc = acc.minkowski(&f.subdiff_q(x));
                }
                acc
            }
        }
    }

    pub fn subdiff(&self, x: &QVec) -> SubVal {
        self.subdiff_q(&lift(x))
    }

    /// `dom ∂f` with field coefficients.
    pub fn dom_q2(&self) -> Q2Set {
        match self {
            ConvexFn::Indicator { set, .. } => Q2Set::from_ncset(&NcSet::from_piece(set.clone())),
            ConvexFn::Support { gens, set } => {
                let zero = Q::zero();
                let mut cone = HRep::universe(set.dim);
                cone.le = gens.rays.iter().map(|r| Row::new(r.clone(), zero.clone())).collect();
                cone.eq = gens.lines.iter().map(|l| Row::new(l.clone(), zero.clone())).collect();
                Q2Set::from_ncset(&NcSet::from_piece(cone))
            }
            ConvexFn::GaugeRecip(g) => g.dom(),
            ConvexFn::Interval1d(iv) => iv.dom(),
            ConvexFn::Rockafellar { alpha } => rockafellar_dom(alpha),
            ConvexFn::Halfstrip { alpha } => halfstrip_dom(alpha),
            ConvexFn::Precomposed { inner, matrix, shift } => inner.dom_q2().pull_back(matrix, shift),
            ConvexFn::Sum(fs) => {
                let mut acc = fs[0].dom_q2();
                for f in &fs[1..] {
                    acc = acc.intersect(&f.dom_q2());
                }
                acc
            }
        }
    }

    /// `dom ∂f` as a canonical nearly convex set.
    pub fn dom_subdiff(&self) -> Result<NcSet> {
        Ok(self.dom_q2().rationalize()?.canonicalize())
    }

    /// `f*(x*)` where a closed form is known.
    pub fn conjugate(&self, xs: &[f64]) -> Result<f64> {
        match self {
            ConvexFn::Rockafellar { alpha } => Ok(rockafellar_conjugate(alpha.to_f64(), xs)),
            ConvexFn::Indicator { gens, .. } => {
                let xq = to_q(xs).ok_or_else(|| Error::BadParameter("non-finite dual point".into()))?;
                Ok(support_q2(gens, &lift(&xq)).map_or(f64::INFINITY, |(v, _)| v.to_f64()))
            }
            ConvexFn::Support { set, .. } => {
                let xq = to_q(xs).ok_or_else(|| Error::BadParameter("non-finite dual point".into()))?;
                Ok(if set.contains(&xq) { 0.0 } else { f64::INFINITY })
            }
            other => Err(Error::NoClosedForm(other.kind().into())),
        }
    }
}

/// Exact `(cos θ, sin θ)` for `θ = k · 45°`.
pub fn rotation_45(k: i32) -> (QSqrt2, QSqrt2) {
    let h = QSqrt2::new(Q::zero(), crate::num::qr(1, 2));
    let one = QSqrt2::one();
    let z = QSqrt2::zero();
    let table = [
        (one.clone(), z.clone()),
        (h.clone(), h.clone()),
        (z.clone(), one.clone()),
        (-h.clone(), h.clone()),
        (-one.clone(), z.clone()),
        (-h.clone(), -h.clone()),
        (z.clone(), -one.clone()),
        (h.clone(), -h),
    ];
    table[k.rem_euclid(8) as usize].clone()
}

/// `x ↦ f(c R_θ (x − t))` for planar `f`, with `R_θ` given by its cosine and sine.
pub fn precompose(f: ConvexFn, cos: &QSqrt2, sin: &QSqrt2, t: &QVec, c: &QSqrt2) -> Result<ConvexFn> {
    if f.dim() != 2 || t.dim() != 2 {
        return Err(Error::Not2d);
    }
    if c.signum() <= 0 {
        return Err(Error::BadParameter("scale must be positive".into()));
    }
    if cos * cos + sin * sin != QSqrt2::one() {
        return Err(Error::BadParameter(format!("({cos}, {sin}) is not on the unit circle")));
    }
    let matrix = vec![vec![c * cos, -(c * sin)], vec![c * sin, c * cos]];
    precompose_affine(f, matrix, t.clone())
}

/// `x ↦ f(M (x − t))` for any `M` with `f.dim()` rows.
pub fn precompose_affine(f: ConvexFn, matrix: Vec<Vec<QSqrt2>>, t: QVec) -> Result<ConvexFn> {
    if matrix.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: matrix.len() });
    }
    if let Some(bad) = matrix.iter().find(|r| r.len() != t.dim()) {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: bad.len() });
    }
    Ok(ConvexFn::Precomposed { inner: Box::new(f), matrix, shift: t })
}

/// `f₁ + ⋯ + f_m`, guarded by a qualification on the domains: polyhedral terms
/// contribute their domain, the others its relative interior, and the
/// intersection must be nonempty.
pub fn sum_fn(fs: Vec<ConvexFn>) -> Result<ConvexFn> {
    let Some(first) = fs.first() else {
        return Err(Error::EmptySet);
    };
    let n = first.dim();
    if let Some(bad) = fs.iter().find(|f| f.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.dim() });
    }
    if fs.len() == 1 {
        return Ok(fs.into_iter().next().expect("one term"));
    }
    let mut meet = HRep::universe(n);
    for f in &fs {
        let dom = f.dom_subdiff()?;
        let part = if f.is_polyhedral() { ncset::closure(&dom) } else { ncset::rel_interior(&dom)? };
        meet = meet.intersect(&part);
    }
    if poly::is_empty(&meet) {
        return Err(Error::CqViolated("domains of the summands do not meet".into()));
    }
    Ok(ConvexFn::Sum(fs))
}

/// Pairs `(x, u)` with `u ∈ ∂f(x)`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MonotoneGraphSample {
    pub pairs: Vec<(Vec<f64>, Vec<f64>)>,
}

impl MonotoneGraphSample {
    /// Every probe element of `∂f(x)` for each `x`.
    pub fn from_fn(f: &ConvexFn, xs: &[Vec<QSqrt2>]) -> Self {
        let mut pairs = Vec::new();
        for x in xs {
            let xf: Vec<f64> = x.iter().map(QSqrt2::to_f64).collect();
            for u in f.subdiff_q(x).probes() {
                pairs.push((xf.clone(), u));
            }
        }
        MonotoneGraphSample { pairs }
    }
}
