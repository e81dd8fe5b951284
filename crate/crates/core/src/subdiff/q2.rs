//! Row systems with coefficients in Q(sqrt 2), used while pulling domains back
//! through rotations by multiples of 45 degrees.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ncset::NcSet;
use crate::num::{QSqrt2, QVec, Q};
use crate::poly::{HRep, Row};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q2Row {
    pub a: Vec<QSqrt2>,
    pub b: QSqrt2,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Q2Piece {
    pub eq: Vec<Q2Row>,
    pub le: Vec<Q2Row>,
    pub lt: Vec<Q2Row>,
}

/// A finite union of pieces with Q(sqrt 2) rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q2Set {
    pub dim: usize,
    pub pieces: Vec<Q2Piece>,
}

fn lift_row(r: &Row) -> Q2Row {
    Q2Row { a: r.a.iter().map(QSqrt2::from).collect(), b: QSqrt2::from(&r.b) }
}

impl Q2Row {
    /// `a . x <= b` from rational-or-field literals.
    pub fn new(a: Vec<QSqrt2>, b: QSqrt2) -> Self {
        Q2Row { a, b }
    }

    /// Positive rescaling to rational coefficients, if one exists.
    fn rationalize(&self) -> Result<Row> {
        let entries: Vec<&QSqrt2> = self.a.iter().chain(std::iter::once(&self.b)).collect();
        let Some(pivot) = entries.iter().find(|e| !e.is_zero()) else {
            return Ok(Row::new(QVec::zeros(self.a.len()), Q::zero()));
        };
        let scale = pivot.abs().inv();
        let mut out = Vec::with_capacity(entries.len());
        for e in entries {
            let v = e * &scale;
            match v.as_rational() {
                Some(r) => out.push(r.clone()),
                None => return Err(Error::IrrationalBoundary),
            }
        }
        let b = out.pop().expect("row has a right-hand side");
        Ok(Row::new(QVec(out), b))
    }

    fn slack(&self, x: &[QSqrt2]) -> QSqrt2 {
        self.a.iter().zip(x).fold(-self.b.clone(), |acc, (ai, xi)| acc + ai * xi)
    }

    /// Row of `{x : M (x - t) satisfies self}`.
    fn pull_back(&self, m: &[Vec<QSqrt2>], t: &QVec) -> Q2Row {
        let n = t.dim();
        let mut a = vec![QSqrt2::zero(); n];
        for (ai, row) in self.a.iter().zip(m) {
            if ai.is_zero() {
                continue;
            }
            for (j, mij) in row.iter().enumerate() {
                a[j] = &a[j] + &(ai * mij);
            }
        }
        let mut b = self.b.clone();
        for (aj, tj) in a.iter().zip(t.iter()) {
            b = &b + &(aj * &QSqrt2::from(tj));
        }
        Q2Row { a, b }
    }
}

impl Q2Piece {
    fn concat(&self, o: &Q2Piece) -> Q2Piece {
        let cat = |x: &Vec<Q2Row>, y: &Vec<Q2Row>| x.iter().chain(y).cloned().collect();
        Q2Piece { eq: cat(&self.eq, &o.eq), le: cat(&self.le, &o.le), lt: cat(&self.lt, &o.lt) }
    }
}

impl Q2Piece {
    pub fn contains(&self, x: &[QSqrt2]) -> bool {
        self.eq.iter().all(|r| r.slack(x).is_zero())
            && self.le.iter().all(|r| r.slack(x).signum() <= 0)
            && self.lt.iter().all(|r| r.slack(x).signum() < 0)
    }
}

impl Q2Set {
    pub fn contains(&self, x: &[QSqrt2]) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn from_ncset(e: &NcSet) -> Self {
        let pieces = e
            .pieces
            .iter()
            .map(|p| Q2Piece {
                eq: p.eq.iter().map(lift_row).collect(),
                le: p.le.iter().map(lift_row).collect(),
                lt: p.lt.iter().map(lift_row).collect(),
            })
            .collect();
        Q2Set { dim: e.dim, pieces }
    }

    pub fn pull_back(&self, m: &[Vec<QSqrt2>], t: &QVec) -> Q2Set {
        let map = |rows: &Vec<Q2Row>| rows.iter().map(|r| r.pull_back(m, t)).collect();
        Q2Set {
            dim: t.dim(),
            pieces: self.pieces.iter().map(|p| Q2Piece { eq: map(&p.eq), le: map(&p.le), lt: map(&p.lt) }).collect(),
        }
    }

    pub fn intersect(&self, o: &Q2Set) -> Q2Set {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for q in &o.pieces {
                pieces.push(p.concat(q));
            }
        }
        Q2Set { dim: self.dim, pieces }
    }

    /// Exact rational form, or `IrrationalBoundary`.
    pub fn rationalize(&self) -> Result<NcSet> {
        let conv = |rows: &Vec<Q2Row>| rows.iter().map(Q2Row::rationalize).collect::<Result<Vec<Row>>>();
        let mut pieces = Vec::new();
        for p in &self.pieces {
            pieces.push(HRep { dim: self.dim, eq: conv(&p.eq)?, le: conv(&p.le)?, lt: conv(&p.lt)? });
        }
        Ok(NcSet::new(self.dim, pieces))
    }
}

/// Exact `M (x - t)`.
pub fn apply_affine(m: &[Vec<QSqrt2>], t: &QVec, x: &[QSqrt2]) -> Vec<QSqrt2> {
    let d: Vec<QSqrt2> = x.iter().zip(t.iter()).map(|(xi, ti)| xi - &QSqrt2::from(ti)).collect();
    m.iter()
        .map(|row| row.iter().zip(&d).fold(QSqrt2::zero(), |acc, (mij, dj)| acc + mij * dj))
        .collect()
}
