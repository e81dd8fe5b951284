//! Exact polyhedral geometry over the rationals.
//!
//! An [`HRep`] may carry strict rows, so the same type describes closed
//! polyhedra, their relative interiors, and everything in between.

mod dd;
mod faces;
mod lp;
mod ops;

use serde::{Deserialize, Serialize};

use crate::num::{serde_q, QVec, Q};

pub use dd::{hrep_to_vrep, vrep_to_hrep};
pub use faces::{canonical_piece, faces, strata, Face};
pub(crate) use faces::{lattice_of, piece_with};
pub use lp::{maximize, strict_feasible, LpResult};
pub use ops::{
    canonical_closed,
    affine_hull, contains_poly, intersects, is_empty, linear_image, lineality, minkowski_sum, poly_equal,
    preimage, recession, rel_interior, sup_over,
};

/// One linear row `a . x (op) b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    pub a: QVec,
    #[serde(with = "serde_q")]
    pub b: Q,
}

impl Row {
    pub fn new(a: QVec, b: Q) -> Self {
        Row { a, b }
    }

    pub fn eval(&self, x: &QVec) -> Q {
        self.a.dot(x) - &self.b
    }

    pub fn neg(&self) -> Row {
        Row::new(self.a.neg(), -self.b.clone())
    }

    /// Positive rescaling that makes `a` a coprime integer vector.
    pub fn normalized(&self) -> Row {
        let Some(i) = self.a.leading() else {
            return self.clone();
        };
        let p = self.a.primitive();
        let s = &p[i] / &self.a[i];
        Row::new(p, &self.b * s)
    }

    /// Equality normalization: `(a, b)` jointly coprime with positive leading entry.
    pub fn normalized_eq(&self) -> Row {
        let joint = self.a.concat(&QVec(vec![self.b.clone()]));
        let mut p = joint.primitive();
        if let Some(i) = self.a.leading() {
            if p[i] < Q::from_integer(0.into()) {
                p = p.neg();
            }
        }
        let n = self.a.dim();
        Row::new(QVec(p.0[..n].to_vec()), p.0[n].clone())
    }
}

/// `{x : eq rows = , le rows <= , lt rows < }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HRep {
    pub dim: usize,
    #[serde(default)]
    pub eq: Vec<Row>,
    #[serde(default)]
    pub le: Vec<Row>,
    #[serde(default)]
    pub lt: Vec<Row>,
}

impl HRep {
    pub fn universe(dim: usize) -> Self {
        HRep { dim, eq: vec![], le: vec![], lt: vec![] }
    }

    /// The canonical empty set: the single row `0 <= -1`.
    pub fn empty(dim: usize) -> Self {
        HRep { dim, eq: vec![], le: vec![Row::new(QVec::zeros(dim), Q::from_integer((-1).into()))], lt: vec![] }
    }

    pub fn point(p: &QVec) -> Self {
        let n = p.dim();
        let eq = (0..n).map(|i| Row::new(QVec::unit(n, i), p[i].clone())).collect();
        HRep { dim: n, eq, le: vec![], lt: vec![] }
    }

    /// Axis-aligned box; `strict` selects the open box.
    pub fn boxed(lo: &QVec, hi: &QVec, strict: bool) -> Self {
        let n = lo.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            rows.push(Row::new(QVec::unit(n, i), hi[i].clone()));
            rows.push(Row::new(QVec::unit(n, i).neg(), -lo[i].clone()));
        }
        let mut h = HRep::universe(n);
        if strict {
            h.lt = rows;
        } else {
            h.le = rows;
        }
        h
    }

    pub fn with_eq(mut self, a: &[i64], b: Q) -> Self {
        self.eq.push(Row::new(QVec::from_ints(a), b));
        self
    }

    pub fn with_le(mut self, a: &[i64], b: Q) -> Self {
        self.le.push(Row::new(QVec::from_ints(a), b));
        self
    }

    pub fn with_lt(mut self, a: &[i64], b: Q) -> Self {
        self.lt.push(Row::new(QVec::from_ints(a), b));
        self
    }

    pub fn is_closed(&self) -> bool {
        self.lt.is_empty()
    }

    /// Relaxes strict rows. This is the topological closure when the set is nonempty.
    pub fn closure(&self) -> HRep {
        let mut h = self.clone();
        h.le.extend(h.lt.drain(..));
        h
    }

    pub fn contains(&self, x: &QVec) -> bool {
        let zero = Q::from_integer(0.into());
        self.eq.iter().all(|r| r.eval(x) == zero)
            && self.le.iter().all(|r| r.eval(x) <= zero)
            && self.lt.iter().all(|r| r.eval(x) < zero)
    }

    /// Row-wise conjunction.
    pub fn intersect(&self, other: &HRep) -> HRep {
        let mut h = self.clone();
        h.eq.extend(other.eq.iter().cloned());
        h.le.extend(other.le.iter().cloned());
        h.lt.extend(other.lt.iter().cloned());
        h
    }

    /// Cartesian product, coordinates of `self` first.
    pub fn product(&self, other: &HRep) -> HRep {
        let (n, m) = (self.dim, other.dim);
        let left = |r: &Row| Row::new(r.a.concat(&QVec::zeros(m)), r.b.clone());
        let right = |r: &Row| Row::new(QVec::zeros(n).concat(&r.a), r.b.clone());
        HRep {
            dim: n + m,
            eq: self.eq.iter().map(left).chain(other.eq.iter().map(right)).collect(),
            le: self.le.iter().map(left).chain(other.le.iter().map(right)).collect(),
            lt: self.lt.iter().map(left).chain(other.lt.iter().map(right)).collect(),
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row> {
        self.eq.iter().chain(&self.le).chain(&self.lt)
    }
}

/// `conv(points) + cone(rays) + span(lines)`; empty iff `points` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VRep {
    pub dim: usize,
    pub points: Vec<QVec>,
    #[serde(default)]
    pub rays: Vec<QVec>,
    #[serde(default)]
    pub lines: Vec<QVec>,
}

impl VRep {
    pub fn empty(dim: usize) -> Self {
        VRep { dim, points: vec![], rays: vec![], lines: vec![] }
    }

    pub fn from_points(dim: usize, points: Vec<QVec>) -> Self {
        VRep { dim, points, rays: vec![], lines: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// A point of the relative interior: centroid of the points plus the sum of the rays.
    pub fn relint_point(&self) -> Option<QVec> {
        let mut c = QVec::mean(&self.points)?;
        for r in &self.rays {
            c = c.add(r);
        }
        Some(c)
    }

    /// Affine dimension.
    pub fn affine_dim(&self) -> usize {
        let Some(p0) = self.points.first() else {
            return 0;
        };
        let mut dirs: Vec<QVec> = self.points[1..].iter().map(|p| p.sub(p0)).collect();
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lines.iter().cloned());
        crate::num::rank(&dirs, self.dim)
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }
}

/// Affine map `x -> matrix x + offset`; `matrix` holds `m` rows of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinMap {
    pub matrix: Vec<QVec>,
    pub offset: QVec,
    pub source_dim: usize,
}

impl LinMap {
    pub fn linear(matrix: Vec<QVec>, source_dim: usize) -> Self {
        let m = matrix.len();
        LinMap { matrix, offset: QVec::zeros(m), source_dim }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let n = rows.first().map_or(0, |r| r.len());
        LinMap::linear(rows.iter().map(|r| QVec::from_ints(r)).collect(), n)
    }

    pub fn identity(n: usize) -> Self {
        LinMap::linear((0..n).map(|i| QVec::unit(n, i)).collect(), n)
    }

    pub fn with_offset(mut self, offset: QVec) -> Self {
        self.offset = offset;
        self
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply_linear(&self, x: &QVec) -> QVec {
        QVec(self.matrix.iter().map(|r| r.dot(x)).collect())
    }

    pub fn apply(&self, x: &QVec) -> QVec {
        self.apply_linear(x).add(&self.offset)
    }

    /// Transposed action on row normals: `A^T a`.
    pub fn pull_normal(&self, a: &QVec) -> QVec {
        let mut out = QVec::zeros(self.source_dim);
        for (ai, row) in a.iter().zip(&self.matrix) {
            out = out.axpy(ai, row);
        }
        out
    }

    /// Kernel basis of the linear part.
    pub fn kernel(&self) -> Vec<QVec> {
        crate::num::null_space(&self.matrix, self.source_dim)
    }
}
