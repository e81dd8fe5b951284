//! Finite unions of partially open polyhedra, and the calculus of nearly
//! convex sets built on them.

mod calculus;
mod cover;
mod recession;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::num::{rank, QVec};
use crate::poly::{self, canonical_piece, hrep_to_vrep, lattice_of, piece_with, HRep, Row, VRep};

pub use calculus::{
    closure, decompose, interior_core, is_nearly_convex, nc_image, nc_intersect, nc_preimage, nc_product, nc_scale,
    nc_sum, nearly_equal, rel_interior, Certificate,
};
pub use cover::{set_equal, set_subset, uncovered_point};
pub use recession::{closedness_check, is_bounded, rec_classify, rec_membership, RecessionReport};

/// A finite union of convex pieces, each given by eq/le/lt rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcSet {
    pub dim: usize,
    pub pieces: Vec<HRep>,
}

impl NcSet {
    pub fn new(dim: usize, pieces: Vec<HRep>) -> Self {
        NcSet { dim, pieces }
    }

    pub fn empty(dim: usize) -> Self {
        NcSet { dim, pieces: vec![] }
    }

    pub fn from_piece(h: HRep) -> Self {
        NcSet { dim: h.dim, pieces: vec![h] }
    }

    pub fn point(p: &QVec) -> Self {
        NcSet::from_piece(HRep::point(p))
    }

    pub fn with(mut self, h: HRep) -> Self {
        self.pieces.push(h);
        self
    }

    pub fn union(&self, other: &NcSet) -> NcSet {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        NcSet { dim: self.dim, pieces }
    }

    pub fn contains(&self, x: &QVec) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.iter().all(poly::is_empty)
    }

    /// Nonempty pieces only.
    fn live(&self) -> Vec<&HRep> {
        self.pieces.iter().filter(|p| !poly::is_empty(p)).collect()
    }

    /// Generators of the convex hull of all piece closures.
    pub(crate) fn hull(&self) -> VRep {
        let mut v = VRep::empty(self.dim);
        for p in self.live() {
            let pv = hrep_to_vrep(p);
            v.points.extend(pv.points);
            v.rays.extend(pv.rays);
            v.lines.extend(pv.lines);
        }
        if v.is_empty() {
            return v;
        }
        hrep_to_vrep(&poly::vrep_to_hrep(&v))
    }

    /// Deterministic form of the same point set: empty pieces dropped, every
    /// piece in canonical row form, pieces covered by the others removed,
    /// pairs merged when their union is itself a convex piece, sorted.
    pub fn canonicalize(&self) -> NcSet {
        let mut pieces: Vec<HRep> = self.pieces.iter().filter_map(canonical_piece).collect();
        pieces.sort();
        pieces.dedup();
        absorb(&mut pieces);
        loop {
            if !merge_once(&mut pieces) {
                break;
            }
            absorb(&mut pieces);
        }
        pieces.sort_by(|a, b| piece_dim(b).cmp(&piece_dim(a)).then_with(|| a.cmp(b)));
        NcSet { dim: self.dim, pieces }
    }
}

fn piece_dim(h: &HRep) -> usize {
    h.dim - h.eq.len()
}

/// Drops pieces covered by the union of the others, smallest first.
fn absorb(pieces: &mut Vec<HRep>) {
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by_key(|&i| piece_dim(&pieces[i]));
    let mut alive = vec![true; pieces.len()];
    for i in order {
        let others: Vec<HRep> =
            (0..pieces.len()).filter(|&j| j != i && alive[j]).map(|j| pieces[j].clone()).collect();
        if uncovered_point(&pieces[i], &others).is_none() {
            alive[i] = false;
        }
    }
    let mut k = 0;
    pieces.retain(|_| {
        k += 1;
        alive[k - 1]
    });
}

/// Replaces the first mergeable pair by its union. Returns whether a merge happened.
fn merge_once(pieces: &mut Vec<HRep>) -> bool {
    let vreps: Vec<VRep> = pieces.iter().map(hrep_to_vrep).collect();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if let Some(m) = try_merge(&pieces[i], &vreps[i], &pieces[j], &vreps[j]) {
                pieces[i] = m;
                pieces.remove(j);
                return true;
            }
        }
    }
    false
}

fn try_merge(a: &HRep, av: &VRep, b: &HRep, bv: &VRep) -> Option<HRep> {
    let n = a.dim;
    let p0 = &av.points[0];
    let dirs: Vec<QVec> = av
        .points
        .iter()
        .chain(&bv.points)
        .map(|p| p.sub(p0))
        .chain(av.rays.iter().chain(&bv.rays).chain(&av.lines).chain(&bv.lines).cloned())
        .collect();
    if rank(&dirs, n) > piece_dim(a).max(piece_dim(b)) {
        return None;
    }
    let hull = VRep {
        dim: n,
        points: av.points.iter().chain(&bv.points).cloned().collect(),
        rays: av.rays.iter().chain(&bv.rays).cloned().collect(),
        lines: av.lines.iter().chain(&bv.lines).cloned().collect(),
    };
    let lat = lattice_of(hrep_to_vrep(&poly::vrep_to_hrep(&hull)))?;
    let inside = |x: &QVec| a.contains(x) || b.contains(x);
    if !inside(&lat.vrep.relint_point()?) {
        return None;
    }
    let cand = piece_with(&lat, inside);
    let parts = [a.clone(), b.clone()];
    if uncovered_point(&cand, &parts).is_some() || !poly::contains_poly(&cand, a) || !poly::contains_poly(&cand, b) {
        return None;
    }
    Some(cand)
}

#[derive(Serialize, Deserialize)]
struct PieceJson {
    #[serde(default)]
    eq: Vec<Row>,
    #[serde(default)]
    le: Vec<Row>,
    #[serde(default)]
    lt: Vec<Row>,
}

#[derive(Serialize, Deserialize)]
struct SetJson {
    dim: usize,
    pieces: Vec<PieceJson>,
}

impl Serialize for NcSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SetJson {
            dim: self.dim,
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceJson { eq: p.eq.clone(), le: p.le.clone(), lt: p.lt.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NcSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SetJson::deserialize(d)?;
        let dim = raw.dim;
        for p in &raw.pieces {
            for r in p.eq.iter().chain(&p.le).chain(&p.lt) {
                if r.a.dim() != dim {
                    return Err(serde::de::Error::custom(format!(
                        "row of length {} in a set of dimension {dim}",
                        r.a.dim()
                    )));
                }
            }
        }
        Ok(NcSet {
            dim,
            pieces: raw.pieces.into_iter().map(|p| HRep { dim, eq: p.eq, le: p.le, lt: p.lt }).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    fn unit(lo: i64, hi: i64) -> HRep {
        HRep::boxed(&QVec::from_ints(&[lo]), &QVec::from_ints(&[hi]), false)
    }

    #[test]
    fn duplicates_collapse() {
        let sq = HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), false);
        let open = HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), true);
        let origin = HRep::point(&QVec::zeros(2));
        let e = NcSet::new(2, vec![open.clone(), origin.clone(), origin.clone()]).canonicalize();
        assert_eq!(e.pieces.len(), 2);
        assert!(e.contains(&QVec::zeros(2)));
        assert!(!e.contains(&QVec::from_ints(&[1, 1])));
        let _ = sq;
    }

    #[test]
    fn open_interval_absorbed_by_closed() {
        let open = HRep::boxed(&QVec::from_ints(&[0]), &QVec::from_ints(&[1]), true);
        let e = NcSet::new(1, vec![open, unit(0, 1)]).canonicalize();
        assert_eq!(e.pieces, vec![poly::canonical_closed(&unit(0, 1))]);
        assert!(NcSet::empty(3).canonicalize().pieces.is_empty());
    }

    #[test]
    fn adjacent_pieces_merge() {
        // [0,1) ∪ {1} ∪ (1,2] = [0,2]
        let left = HRep::universe(1).with_le(&[-1], q(0)).with_lt(&[1], q(1));
        let right = HRep::universe(1).with_lt(&[-1], q(-1)).with_le(&[1], q(2));
        let mid = HRep::point(&QVec::from_ints(&[1]));
        let e = NcSet::new(1, vec![left, right, mid]).canonicalize();
        assert_eq!(e.pieces, vec![poly::canonical_closed(&unit(0, 2))]);
    }

    #[test]
    fn json_round_trip() {
        let e = NcSet::new(1, vec![unit(0, 1)]);
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.contains("\"b\":\"1\""));
        let back: NcSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
    }
}
