//! Helpers shared by the integration tests: an independent Fourier–Motzkin
//! oracle for partially open polyhedra and a generator of random nearly convex
//! sets with known relative interior and closure.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ncx::ncset::NcSet;
use ncx::num::{q, qr, QVec, Q};
use ncx::poly::{faces, rel_interior, vrep_to_hrep, HRep, LinMap, VRep};
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `a·x ≤ b`, or `a·x < b` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ineq {
    pub a: Vec<Q>,
    pub b: Q,
    pub strict: bool,
    /// Indices of the input rows this one was combined from.
    pub from: BTreeSet<usize>,
}

fn ineq(a: Vec<Q>, b: Q, strict: bool) -> Ineq {
    Ineq { a, b, strict, from: BTreeSet::new() }
}

/// A partially open polyhedron as plain rows, handled only by elimination.
#[derive(Clone, Debug)]
pub struct Fm {
    pub n: usize,
    pub eqs: Vec<(Vec<Q>, Q)>,
    pub ineqs: Vec<Ineq>,
}

fn normalize(mut r: Ineq) -> Ineq {
    if let Some(lead) = r.a.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
        r.a.iter_mut().for_each(|c| *c = &*c / &lead);
        r.b = &r.b / &lead;
    }
    r
}

impl Fm {
    pub fn from_hrep(h: &HRep) -> Self {
        let v = |r: &ncx::poly::Row| r.a.0.clone();
        Fm {
            n: h.dim,
            eqs: h.eq.iter().map(|r| (v(r), r.b.clone())).collect(),
            ineqs: h
                .le
                .iter()
                .map(|r| ineq(v(r), r.b.clone(), false))
                .chain(h.lt.iter().map(|r| ineq(v(r), r.b.clone(), true)))
                .collect(),
        }
    }

    pub fn closure(&self) -> Fm {
        let mut out = self.clone();
        out.ineqs.iter_mut().for_each(|r| r.strict = false);
        out
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        let dot = |a: &[Q]| a.iter().zip(x).fold(Q::zero(), |s, (c, v)| s + c * v);
        self.eqs.iter().all(|(a, b)| &dot(a) == b)
            && self.ineqs.iter().all(|r| if r.strict { dot(&r.a) < r.b } else { dot(&r.a) <= r.b })
    }

    /// Remove variable `j` (its column becomes zero everywhere).
    fn eliminate(&mut self, j: usize) {
        if let Some(k) = self.eqs.iter().position(|(a, _)| !a[j].is_zero()) {
            let (a, b) = self.eqs.remove(k);
            let sub = |row: &mut Vec<Q>, rhs: &mut Q| {
                let c = row[j].clone();
                if c.is_zero() {
                    return;
                }
                let f = &c / &a[j];
                for (x, y) in row.iter_mut().zip(&a) {
                    *x = &*x - &f * y;
                }
                *rhs = &*rhs - &f * &b;
            };
            for (row, rhs) in &mut self.eqs {
                sub(row, rhs);
            }
            for r in &mut self.ineqs {
                sub(&mut r.a, &mut r.b);
            }
            return;
        }
        self.label();
        let (mut pos, mut neg, mut zero) = (vec![], vec![], vec![]);
        for r in self.ineqs.drain(..) {
            if r.a[j].is_positive() {
                pos.push(r);
            } else if r.a[j].is_negative() {
                neg.push(r);
            } else {
                zero.push(r);
            }
        }
        for p in &pos {
            for m in &neg {
                let (fp, fm) = (m.a[j].abs(), p.a[j].clone());
                let a: Vec<Q> = p.a.iter().zip(&m.a).map(|(x, y)| x * &fp + y * &fm).collect();
                let from: BTreeSet<usize> = p.from.union(&m.from).copied().collect();
                zero.push(Ineq { a, b: &p.b * &fp + &m.b * &fm, strict: p.strict || m.strict, from });
            }
        }
        // Chernikov: every row is a nonnegative combination of inputs that
        // cancels on the zero columns, and the extreme ones need at most one
        // input more than there are such columns
        let cap = (0..self.n).filter(|&c| zero.iter().all(|r| r.a[c].is_zero())).count() + 1;
        zero.retain(|r| r.from.len() <= cap);
        // Kohler: a strictly larger ancestor set means the row is implied
        let minimal: Vec<Ineq> = zero
            .iter()
            .filter(|r| !zero.iter().any(|o| o.from.len() < r.from.len() && o.from.is_subset(&r.from)))
            .cloned()
            .collect();
        self.ineqs = tidy(minimal);
    }

    /// Gives unlabelled rows fresh singleton ancestor sets.
    fn label(&mut self) {
        let mut next = self.ineqs.iter().flat_map(|r| r.from.iter().copied()).max().map_or(0, |m| m + 1);
        for r in &mut self.ineqs {
            if r.from.is_empty() {
                r.from.insert(next);
                next += 1;
            }
        }
    }

    /// Decided by eliminating every variable.
    pub fn is_empty(&self) -> bool {
        let mut s = self.clone();
        for j in 0..s.n {
            s.eliminate(j);
            if s.trivially_empty() {
                return true;
            }
        }
        s.trivially_empty()
    }

    fn trivially_empty(&self) -> bool {
        self.eqs.iter().any(|(a, b)| a.iter().all(Zero::is_zero) && !b.is_zero())
            || self.ineqs.iter().any(|r| {
                r.a.iter().all(Zero::is_zero) && (if r.strict { !r.b.is_positive() } else { r.b.is_negative() })
            })
    }

    /// The first `k` coordinates of the set.
    pub fn project(&self, k: usize) -> Fm {
        let mut s = self.clone();
        for j in k..s.n {
            s.eliminate(j);
        }
        let cut = |a: &[Q]| a[..k].to_vec();
        let mut eqs: Vec<(Vec<Q>, Q)> = s.eqs.iter().map(|(a, b)| (cut(a), b.clone())).collect();
        eqs.retain(|(a, b)| !(a.iter().all(Zero::is_zero) && b.is_zero()));
        Fm { n: k, eqs, ineqs: tidy(s.ineqs.iter().map(|r| ineq(cut(&r.a), r.b.clone(), r.strict)).collect()) }
    }

    fn with(&self, extra: Ineq) -> Fm {
        let mut s = self.clone();
        s.ineqs.push(extra);
        s
    }

    /// Point-set inclusion, one emptiness test per row of `other`.
    pub fn subset_of(&self, other: &Fm) -> bool {
        if self.is_empty() {
            return true;
        }
        let neg = |a: &[Q]| a.iter().map(|c| -c).collect::<Vec<Q>>();
        for r in &other.ineqs {
            // ¬(a·x ≤ b) is −a·x < −b and ¬(a·x < b) is −a·x ≤ −b
            if !self.with(ineq(neg(&r.a), -r.b.clone(), !r.strict)).is_empty() {
                return false;
            }
        }
        for (a, b) in &other.eqs {
            let above = ineq(neg(a), -b.clone(), true);
            let below = ineq(a.clone(), b.clone(), true);
            if !self.with(above).is_empty() || !self.with(below).is_empty() {
                return false;
            }
        }
        true
    }

    pub fn equals(&self, other: &Fm) -> bool {
        self.n == other.n && self.subset_of(other) && other.subset_of(self)
    }

    pub fn intersect(&self, other: &Fm) -> Fm {
        let mut s = self.clone();
        s.eqs.extend(other.eqs.iter().cloned());
        s.ineqs.extend(other.ineqs.iter().cloned());
        s
    }

    /// `{A x + t : x ∈ self}` by elimination in the variables `(y, x)`.
    pub fn image(&self, m: &LinMap) -> Fm {
        let (k, n) = (m.target_dim(), self.n);
        let lift = |a: &[Q]| [vec![Q::zero(); k], a.to_vec()].concat();
        let mut eqs: Vec<(Vec<Q>, Q)> = self.eqs.iter().map(|(a, b)| (lift(a), b.clone())).collect();
        for (i, row) in m.matrix.iter().enumerate() {
            // y_i − row·x = t_i
            let mut a = vec![Q::zero(); k + n];
            a[i] = q(1);
            for (j, c) in row.iter().enumerate() {
                a[k + j] = -c.clone();
            }
            eqs.push((a, m.offset[i].clone()));
        }
        let ineqs = self.ineqs.iter().map(|r| ineq(lift(&r.a), r.b.clone(), r.strict)).collect();
        Fm { n: k + n, eqs, ineqs }.project(k)
    }

    /// `{x : A x + t ∈ self}` by substitution.
    pub fn preimage(&self, m: &LinMap) -> Fm {
        let n = m.source_dim;
        let pull = |a: &[Q], b: &Q| {
            let mut out = vec![Q::zero(); n];
            for (i, c) in a.iter().enumerate() {
                for (j, v) in m.matrix[i].iter().enumerate() {
                    out[j] = &out[j] + c * v;
                }
            }
            let shift = a.iter().zip(m.offset.iter()).fold(Q::zero(), |s, (c, t)| s + c * t);
            (out, b - shift)
        };
        Fm {
            n,
            eqs: self.eqs.iter().map(|(a, b)| pull(a, b)).collect(),
            ineqs: self
                .ineqs
                .iter()
                .map(|r| {
                    let (a, b) = pull(&r.a, &r.b);
                    ineq(a, b, r.strict)
                })
                .collect(),
        }
    }

    /// Minkowski sum by elimination in `(z, x)` with `z − x ∈ other`.
    pub fn sum(&self, other: &Fm) -> Fm {
        let n = self.n;
        let first = |a: &[Q]| [vec![Q::zero(); n], a.to_vec()].concat();
        let diff = |a: &[Q]| [a.to_vec(), a.iter().map(|c| -c).collect()].concat();
        let mut eqs: Vec<(Vec<Q>, Q)> = self.eqs.iter().map(|(a, b)| (first(a), b.clone())).collect();
        eqs.extend(other.eqs.iter().map(|(a, b)| (diff(a), b.clone())));
        let mut ineqs: Vec<Ineq> =
            self.ineqs.iter().map(|r| ineq(first(&r.a), r.b.clone(), r.strict)).collect();
        ineqs.extend(other.ineqs.iter().map(|r| ineq(diff(&r.a), r.b.clone(), r.strict)));
        Fm { n: 2 * n, eqs, ineqs }.project(n)
    }
}

/// Normalize, drop satisfied constant rows and exact repeats. Equal rows with
/// different ancestors both stay: the pruning in `eliminate` may need either.
fn tidy(rows: Vec<Ineq>) -> Vec<Ineq> {
    let mut rows: Vec<Ineq> = rows
        .into_iter()
        .map(normalize)
        .filter(|r| !(r.a.iter().all(Zero::is_zero) && (r.b.is_positive() || (!r.strict && r.b.is_zero()))))
        .collect();
    rows.sort();
    rows.dedup();
    rows
}

/// A random nearly convex set `E` with `ri cl E ⊆ E ⊆ cl E`, built from the
/// relative interior of a random polyhedron and some of its relatively open
/// faces. `core` is `ri cl E` and `gens` generates `cl E`.
#[derive(Clone, Debug)]
pub struct NcInstance {
    pub set: NcSet,
    pub core: HRep,
    pub closure: HRep,
    pub gens: VRep,
}

fn small(rng: &mut ChaCha8Rng) -> Q {
    qr(rng.gen_range(-6..=6), rng.gen_range(1..=2))
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> QVec {
    QVec((0..n).map(|_| small(rng)).collect())
}

/// Random rational affine map `R^n → R^m`.
pub fn random_map(rng: &mut ChaCha8Rng, n: usize, m: usize) -> LinMap {
    let rows = (0..m).map(|_| QVec((0..n).map(|_| q(rng.gen_range(-2..=2))).collect())).collect();
    let offset = if rng.gen_bool(0.5) { random_vec(rng, m) } else { QVec::zeros(m) };
    LinMap::linear(rows, n).with_offset(offset)
}

pub fn nc_from_gens(rng: &mut ChaCha8Rng, gens: VRep, max_pieces: usize) -> NcInstance {
    let closure = vrep_to_hrep(&gens);
    let core = rel_interior(&closure);
    // a single point has no proper faces
    let mut others = faces(&closure).unwrap_or_default();
    others.shuffle(rng);
    let extra = rng.gen_range(0..max_pieces.max(1));
    let mut set = NcSet::from_piece(core.clone());
    for f in others.into_iter().take(extra) {
        set = set.with(f.relint);
    }
    NcInstance { set, core, closure, gens }
}

/// Dimension `1..=max_dim`, up to 5 points and occasionally a ray.
pub fn random_nc(rng: &mut ChaCha8Rng, max_dim: usize) -> NcInstance {
    let n = rng.gen_range(1..=max_dim);
    let k = rng.gen_range(1..=5);
    let mut gens = VRep::from_points(n, (0..k).map(|_| random_vec(rng, n)).collect());
    if rng.gen_bool(0.25) {
        let r = random_vec(rng, n);
        if !r.is_zero() {
            gens.rays.push(r);
        }
    }
    nc_from_gens(rng, gens, 5)
}

/// A second instance whose relative interior meets that of `first`: its
/// points are symmetric about a point of `ri first`.
pub fn overlapping_nc(rng: &mut ChaCha8Rng, first: &NcInstance) -> NcInstance {
    let n = first.set.dim;
    let c = ri_point(rng, &first.gens);
    let mut pts = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let d = random_vec(rng, n);
        pts.push(c.add(&d));
        pts.push(c.sub(&d));
    }
    nc_from_gens(rng, VRep::from_points(n, pts), 5)
}

/// Strictly positive combination of every generator: a point of `ri`.
pub fn ri_point(rng: &mut ChaCha8Rng, g: &VRep) -> QVec {
    let w: Vec<Q> = g.points.iter().map(|_| qr(rng.gen_range(1..=5), 1)).collect();
    let total = w.iter().fold(Q::zero(), |s, x| s + x);
    let mut p = QVec::zeros(g.dim);
    for (x, wi) in g.points.iter().zip(&w) {
        p = p.axpy(&(wi / &total), x);
    }
    for r in &g.rays {
        p = p.axpy(&qr(rng.gen_range(1..=4), 2), r);
    }
    for l in &g.lines {
        p = p.axpy(&qr(rng.gen_range(-4..=4), 2), l);
    }
    p
}

/// Nonnegative combination that often lands on a face.
pub fn closure_point(rng: &mut ChaCha8Rng, g: &VRep) -> QVec {
    let mut w: Vec<Q> = g.points.iter().map(|_| q(rng.gen_range(0..=3))).collect();
    if w.iter().all(Zero::is_zero) {
        let i = rng.gen_range(0..w.len());
        w[i] = q(1);
    }
    let total = w.iter().fold(Q::zero(), |s, x| s + x);
    let mut p = QVec::zeros(g.dim);
    for (x, wi) in g.points.iter().zip(&w) {
        p = p.axpy(&(wi / &total), x);
    }
    for r in &g.rays {
        p = p.axpy(&q(rng.gen_range(0..=2)), r);
    }
    p
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
