//! Double description conversions between H- and V-representations.

use num_traits::{Signed, Zero};

use super::{HRep, Row, VRep};
use crate::num::{project_out, rref, QVec, Q};

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: QVec,
    zeros: Bits,
}

/// Generators of the cone `{z : row . z <= 0 for every row}`.
pub(crate) struct Cone {
    pub lines: Vec<QVec>,
    pub rays: Vec<QVec>,
}

pub(crate) fn cone_generators(rows: &[QVec], d: usize) -> Cone {
    let nrows = rows.len();
    let mut lines: Vec<QVec> = (0..d).map(|i| QVec::unit(d, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    for (k, h) in rows.iter().enumerate() {
        if h.is_zero() {
            for r in rays.iter_mut() {
                r.zeros.set(k);
            }
            continue;
        }
        if let Some(li) = lines.iter().position(|l| !h.dot(l).is_zero()) {
            let mut l0 = lines.swap_remove(li);
            let mut hl0 = h.dot(&l0);
            if hl0.is_positive() {
                l0 = l0.neg();
                hl0 = -hl0;
            }
            for l in lines.iter_mut() {
                let f = h.dot(l) / &hl0;
                if !f.is_zero() {
                    *l = l.axpy(&(-f), &l0);
                }
            }
            for r in rays.iter_mut() {
                let f = h.dot(&r.v) / &hl0;
                if !f.is_zero() {
                    r.v = r.v.axpy(&(-f), &l0).primitive();
                }
                r.zeros.set(k);
            }
            let mut zeros = Bits::new(nrows);
            for j in 0..k {
                zeros.set(j);
            }
            rays.push(Ray { v: l0.primitive(), zeros });
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|r| h.dot(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.set(k);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let need = (d - lines.len()).saturating_sub(2);
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() < need {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).all(|r| r == p || r == n || !common.subset_of(&rays[r].zeros));
                if !adjacent {
                    continue;
                }
                let v = rays[n].v.scale(&vals[p]).axpy(&(-vals[n].clone()), &rays[p].v).primitive();
                let mut zeros = common;
                zeros.set(k);
                fresh.push(Ray { v, zeros });
            }
        }
        let mut kept = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_positive() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.set(k);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }
    Cone { lines, rays: rays.into_iter().map(|r| r.v).collect() }
}

/// Canonical generators of the closure of `h` (strict rows are relaxed).
///
/// Lines are in reduced echelon form; points and rays are projected onto the
/// orthogonal complement of the lines, deduplicated and sorted.
pub fn hrep_to_vrep(h: &HRep) -> VRep {
    let n = h.dim;
    let hom = |r: &Row| {
        let mut v = r.a.0.clone();
        v.push(-r.b.clone());
        QVec(v)
    };
    let mut rows = vec![QVec::unit(n + 1, n).neg()];
    for r in &h.eq {
        rows.push(hom(r));
        rows.push(hom(r).neg());
    }
    for r in h.le.iter().chain(&h.lt) {
        rows.push(hom(r));
    }
    let cone = cone_generators(&rows, n + 1);
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for r in cone.rays {
        let t = r[n].clone();
        let x = QVec(r.0[..n].to_vec());
        if t.is_positive() {
            points.push(x.scale(&(Q::from_integer(1.into()) / t)));
        } else {
            rays.push(x);
        }
    }
    if points.is_empty() {
        return VRep::empty(n);
    }
    let lines: Vec<QVec> = cone.lines.iter().map(|l| QVec(l.0[..n].to_vec())).collect();
    canonical_generators(n, points, rays, lines)
}

fn canonical_generators(n: usize, points: Vec<QVec>, rays: Vec<QVec>, lines: Vec<QVec>) -> VRep {
    let (lines, _) = rref(&lines, n);
    let mut points: Vec<QVec> = points.iter().map(|p| project_out(p, &lines)).collect();
    let mut rays: Vec<QVec> = rays
        .iter()
        .map(|r| project_out(r, &lines).primitive())
        .filter(|r| !r.is_zero())
        .collect();
    points.sort();
    points.dedup();
    rays.sort();
    rays.dedup();
    VRep { dim: n, points, rays, lines }
}

/// Canonical H-representation of a V-described polyhedron: equalities in
/// normalized echelon form, one normalized row per facet, sorted.
pub fn vrep_to_hrep(v: &VRep) -> HRep {
    let n = v.dim;
    if v.points.is_empty() {
        return HRep::empty(n);
    }
    let with = |x: &QVec, last: i64| {
        let mut r = x.0.clone();
        r.push(Q::from_integer(last.into()));
        QVec(r)
    };
    let mut rows: Vec<QVec> = Vec::new();
    rows.extend(v.points.iter().map(|p| with(p, -1)));
    rows.extend(v.rays.iter().map(|r| with(r, 0)));
    for l in &v.lines {
        rows.push(with(l, 0));
        rows.push(with(l, 0).neg());
    }
    let cone = cone_generators(&rows, n + 1);

    let (eqs, _) = rref(&cone.lines, n + 1);
    let normals: Vec<QVec> = eqs.iter().map(|e| QVec(e.0[..n].to_vec())).collect();
    let mut eq: Vec<Row> = eqs
        .iter()
        .map(|e| Row::new(QVec(e.0[..n].to_vec()), e[n].clone()).normalized_eq())
        .collect();
    eq.sort();

    let mut le: Vec<Row> = Vec::new();
    for r in &cone.rays {
        let row = Row::new(QVec(r.0[..n].to_vec()), r[n].clone());
        let row = reduce_modulo(&row, &eqs, &normals);
        if row.a.is_zero() {
            continue;
        }
        le.push(row.normalized());
    }
    le.sort();
    le.dedup();
    HRep { dim: n, eq, le, lt: vec![] }
}

/// Shifts `row` along the equality rows so its normal is orthogonal to theirs.
pub(crate) fn reduce_modulo(row: &Row, eqs: &[QVec], normals: &[QVec]) -> Row {
    if eqs.is_empty() {
        return row.clone();
    }
    let n = row.a.dim();
    let a = project_out(&row.a, normals);
    let delta = row.a.sub(&a);
    // delta = sum c_i normals_i; shift b by the same combination of rhs.
    let coeffs = crate::num::solve_in_span(&delta, normals).expect("projection lies in span");
    let mut b = row.b.clone();
    for (c, e) in coeffs.iter().zip(eqs) {
        b -= c * &e[n];
    }
    Row::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    #[test]
    fn unit_square_vertices() {
        let sq = HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), false);
        let v = hrep_to_vrep(&sq);
        let want: Vec<QVec> = [[0, 0], [0, 1], [1, 0], [1, 1]].iter().map(|p| QVec::from_ints(p)).collect();
        assert_eq!(v.points, want);
        assert!(v.rays.is_empty() && v.lines.is_empty());
    }

    #[test]
    fn half_plane_generators() {
        let h = HRep::universe(2).with_le(&[-1, 0], q(0));
        let v = hrep_to_vrep(&h);
        assert_eq!(v.points, vec![QVec::from_ints(&[0, 0])]);
        assert_eq!(v.rays, vec![QVec::from_ints(&[1, 0])]);
        assert_eq!(v.lines, vec![QVec::from_ints(&[0, 1])]);
    }

    #[test]
    fn contradictory_rows_are_empty() {
        let h = HRep::universe(2).with_le(&[1, 0], q(-1)).with_le(&[-1, 0], q(-1));
        assert!(hrep_to_vrep(&h).is_empty());
    }

    #[test]
    fn redundant_rows_disappear_on_round_trip() {
        let h = HRep::universe(1).with_le(&[1], q(1)).with_le(&[1], q(2)).with_le(&[-1], q(0));
        let back = vrep_to_hrep(&hrep_to_vrep(&h));
        assert_eq!(back.le.len(), 2);
    }

    #[test]
    fn segment_equality_is_normalized() {
        let v = VRep::from_points(2, vec![QVec::from_ints(&[0, 0]), QVec::from_ints(&[1, 1])]);
        let h = vrep_to_hrep(&v);
        assert_eq!(h.eq, vec![Row::new(QVec::from_ints(&[1, -1]), q(0))]);
        assert_eq!(h.le.len(), 2);
    }

    use proptest::prelude::*;

    fn points(dim: usize) -> impl Strategy<Value = Vec<QVec>> {
        prop::collection::vec(prop::collection::vec(-4i64..=4, dim), 1..6)
            .prop_map(|ps| ps.iter().map(|p| QVec::from_ints(p)).collect())
    }

    proptest! {
        #[test]
        fn generators_satisfy_their_rows(ps in points(3), ray in prop::collection::vec(-2i64..=2, 3)) {
            let mut v = VRep::from_points(3, ps);
            let r = QVec::from_ints(&ray);
            if !r.is_zero() {
                v.rays.push(r.clone());
            }
            let h = vrep_to_hrep(&v);
            for p in &v.points {
                prop_assert!(h.contains(p));
                // p + r stays inside when r is a ray
                prop_assert!(h.contains(&p.add(&r)) || v.rays.is_empty());
            }
        }

        #[test]
        fn double_round_trip_is_stable(ps in points(3)) {
            let h = vrep_to_hrep(&VRep::from_points(3, ps));
            let again = vrep_to_hrep(&hrep_to_vrep(&h));
            prop_assert!(crate::poly::poly_equal(&h, &again));
            prop_assert_eq!(h.le.len(), again.le.len());
        }

        #[test]
        fn vertices_come_from_the_input(ps in points(2)) {
            let v = hrep_to_vrep(&vrep_to_hrep(&VRep::from_points(2, ps.clone())));
            for x in &v.points {
                prop_assert!(ps.contains(x));
            }
        }
    }
}
