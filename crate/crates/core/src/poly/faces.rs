//! Face lattices of closed polyhedra and canonical forms of partially open pieces.

use std::collections::HashSet;

use num_traits::Zero;

use super::dd::{hrep_to_vrep, vrep_to_hrep};
use super::lp::strict_feasible;
use super::{HRep, Row, VRep};
use crate::error::{Error, Result};
use crate::num::QVec;

/// A nonempty face of a closed polyhedron.
#[derive(Clone, Debug)]
pub struct Face {
    pub dim: usize,
    /// The face itself, a closed polyhedron.
    pub closed: HRep,
    /// Its relative interior.
    pub relint: HRep,
    /// A point of the relative interior.
    pub point: QVec,
    /// Indices of the parent's facet rows that vanish on the face.
    pub tight: Vec<usize>,
    gens: Vec<bool>,
}

impl Face {
    fn within(&self, other: &Face) -> bool {
        self.gens.iter().zip(&other.gens).all(|(a, b)| !a || *b)
    }
}

pub(crate) struct Lattice {
    pub hrep: HRep,
    pub vrep: VRep,
    /// Proper faces, highest dimension first.
    pub faces: Vec<Face>,
}

pub(crate) fn lattice(h: &HRep) -> Option<Lattice> {
    lattice_of(hrep_to_vrep(h))
}

/// Lattice of a polyhedron given by canonical generators.
pub(crate) fn lattice_of(vrep: VRep) -> Option<Lattice> {
    if vrep.is_empty() {
        return None;
    }
    let dim = vrep.dim;
    let hrep = vrep_to_hrep(&vrep);
    let np = vrep.points.len();
    let gens: Vec<&QVec> = vrep.points.iter().chain(&vrep.rays).collect();
    let incidence: Vec<Vec<bool>> = hrep
        .le
        .iter()
        .map(|r| {
            gens.iter()
                .enumerate()
                .map(|(k, g)| if k < np { r.eval(g).is_zero() } else { r.a.dot(g).is_zero() })
                .collect()
        })
        .collect();

    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut queue: Vec<Vec<bool>> = Vec::new();
    for inc in &incidence {
        if inc[..np].iter().any(|&b| b) && seen.insert(inc.clone()) {
            queue.push(inc.clone());
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let cur = queue[i].clone();
        for inc in &incidence {
            let meet: Vec<bool> = cur.iter().zip(inc).map(|(a, b)| *a && *b).collect();
            if meet != cur && meet[..np].iter().any(|&b| b) && seen.insert(meet.clone()) {
                queue.push(meet);
            }
        }
        i += 1;
    }

    let mut faces: Vec<Face> = queue
        .into_iter()
        .map(|g| {
            let tight: Vec<usize> = (0..incidence.len())
                .filter(|&f| g.iter().zip(&incidence[f]).all(|(a, b)| !a || *b))
                .collect();
            let sub = VRep {
                dim,
                points: (0..np).filter(|&k| g[k]).map(|k| vrep.points[k].clone()).collect(),
                rays: (np..gens.len()).filter(|&k| g[k]).map(|k| vrep.rays[k - np].clone()).collect(),
                lines: vrep.lines.clone(),
            };
            let mut closed = HRep { dim, eq: hrep.eq.clone(), le: vec![], lt: vec![] };
            let mut relint = closed.clone();
            for (f, row) in hrep.le.iter().enumerate() {
                if tight.contains(&f) {
                    closed.eq.push(row.clone());
                    relint.eq.push(row.clone());
                } else {
                    closed.le.push(row.clone());
                    relint.lt.push(row.clone());
                }
            }
            Face { dim: sub.affine_dim(), point: sub.relint_point().expect("face has a point"), closed, relint, tight, gens: g }
        })
        .collect();
    faces.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.closed.cmp(&b.closed)));
    Some(Lattice { hrep, vrep, faces })
}

/// All nonempty proper faces of the closure of `h`, highest dimension first.
pub fn faces(h: &HRep) -> Result<Vec<Face>> {
    lattice(h).map(|l| l.faces).ok_or(Error::EmptySet)
}

/// Unique row system for a convex piece: canonical closure rows, with one
/// strict row per maximal face of the closure that the piece omits.
pub fn canonical_piece(q: &HRep) -> Option<HRep> {
    strict_feasible(q)?;
    let lat = lattice(&q.closure())?;
    Some(piece_with(&lat, |x| q.contains(x)))
}

/// The piece of `lat` that keeps exactly the faces whose relative interior
/// point satisfies `keep`, then closes the removed set downward.
pub(crate) fn piece_with(lat: &Lattice, keep: impl Fn(&QVec) -> bool) -> HRep {
    let removed: Vec<&Face> = lat.faces.iter().filter(|f| !keep(&f.point)).collect();
    let maximal: Vec<&Face> = removed
        .iter()
        .filter(|f| !removed.iter().any(|g| f.within(g) && !g.within(f)))
        .copied()
        .collect();
    let dim = lat.hrep.dim;
    let mut out = HRep { dim, eq: lat.hrep.eq.clone(), le: vec![], lt: vec![] };
    let mut strict_facets = HashSet::new();
    for f in &maximal {
        if f.tight.len() == 1 {
            strict_facets.insert(f.tight[0]);
            out.lt.push(lat.hrep.le[f.tight[0]].clone());
        } else {
            let mut a = QVec::zeros(dim);
            let mut b = num_traits::zero();
            for &t in &f.tight {
                a = a.add(&lat.hrep.le[t].a);
                b += &lat.hrep.le[t].b;
            }
            out.lt.push(Row::new(a, b).normalized());
        }
    }
    for (i, row) in lat.hrep.le.iter().enumerate() {
        if !strict_facets.contains(&i) {
            out.le.push(row.clone());
        }
    }
    out.lt.sort();
    out.lt.dedup();
    out
}

/// Relatively open faces (the closure's relative interior included) whose
/// union is the piece `q`.
pub fn strata(q: &HRep) -> Vec<HRep> {
    if strict_feasible(q).is_none() {
        return vec![];
    }
    let Some(lat) = lattice(&q.closure()) else {
        return vec![];
    };
    let mut top = lat.hrep.clone();
    top.lt = std::mem::take(&mut top.le);
    let mut out = vec![top];
    out.extend(lat.faces.iter().filter(|f| q.contains(&f.point)).map(|f| f.relint.clone()));
    out
}
