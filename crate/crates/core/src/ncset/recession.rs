//! Recession directions of nearly convex sets.

use num_traits::Zero;

use super::calculus::{closure, is_nearly_convex, nc_image};
use super::{uncovered_point, NcSet};
use crate::error::{Error, Result};
use crate::num::{rank, solve_in_span, QVec, Q};
use crate::poly::{self, hrep_to_vrep, linear_image, poly_equal, recession, HRep, LinMap, Row};

fn require_nc(e: &NcSet) -> Result<()> {
    if is_nearly_convex(e).verdict {
        Ok(())
    } else {
        Err(Error::NotNearlyConvex)
    }
}

/// Whether `x + λ y ∈ E` for every `x ∈ E` and `λ ≥ 0`.
///
/// Decided on the lifted set `E × [0, ∞)` in `(x, λ)` space: it must be
/// covered by the preimages of the pieces under `(x, λ) ↦ x + λ y`.
pub fn rec_membership(e: &NcSet, y: &QVec) -> bool {
    let n = e.dim;
    let lift = |r: &Row| Row::new(r.a.concat(&QVec(vec![Q::zero()])), r.b.clone());
    let along = |r: &Row| Row::new(r.a.concat(&QVec(vec![r.a.dot(y)])), r.b.clone());
    let map_rows = |h: &HRep, f: &dyn Fn(&Row) -> Row| HRep {
        dim: n + 1,
        eq: h.eq.iter().map(f).collect(),
        le: h.le.iter().map(f).collect(),
        lt: h.lt.iter().map(f).collect(),
    };
    let targets: Vec<HRep> = e.pieces.iter().map(|p| map_rows(p, &along)).collect();
    let nonneg = Row::new(QVec::unit(n + 1, n).neg(), Q::zero());
    e.pieces.iter().all(|p| {
        let mut cell = map_rows(p, &lift);
        cell.le.push(nonneg.clone());
        uncovered_point(&cell, &targets).is_none()
    })
}

pub fn is_bounded(e: &NcSet) -> Result<bool> {
    require_nc(e)?;
    Ok(e.hull().is_bounded())
}

/// Recession data of a nearly convex set.
#[derive(Clone, Debug)]
pub struct RecessionReport {
    pub rec_cl: HRep,
    pub lineality: Vec<QVec>,
    /// `span rec cl E = span (cl E − cl E)`.
    pub span_condition: bool,
    /// `ri rec cl E`.
    pub inner_bound: HRep,
    pub membership_answers: Vec<(QVec, bool)>,
}

/// Directions probed for membership: the origin, a relative-interior
/// direction of the cone, and that direction nudged by each generator.
fn probe_directions(cone: &HRep) -> Vec<QVec> {
    let v = hrep_to_vrep(cone);
    let n = cone.dim;
    let mut c = QVec::zeros(n);
    for r in &v.rays {
        c = c.add(r);
    }
    let mut out = vec![QVec::zeros(n), c.clone()];
    for r in &v.rays {
        out.push(c.add(r));
    }
    for l in &v.lines {
        out.push(c.add(l));
        out.push(c.sub(l));
    }
    out.sort();
    out.dedup();
    out
}

pub fn rec_classify(e: &NcSet) -> Result<RecessionReport> {
    require_nc(e)?;
    let k = closure(e);
    let rec_cl = poly::canonical_closed(&recession(&k)?);
    let lineality = poly::lineality(&k)?;
    let cone_v = hrep_to_vrep(&rec_cl);
    let gens: Vec<QVec> = cone_v.rays.iter().chain(&cone_v.lines).cloned().collect();
    let span_rec = rank(&gens, e.dim);
    let span_diff = e.dim - k.eq.len();
    let span_condition = span_rec == span_diff;
    let inner_bound = poly::rel_interior(&rec_cl);
    let membership_answers: Vec<(QVec, bool)> = probe_directions(&rec_cl)
        .into_iter()
        .map(|y| {
            let ok = rec_membership(e, &y);
            (y, ok)
        })
        .collect();
    if span_condition {
        for (y, ok) in &membership_answers {
            if inner_bound.contains(y) && !ok {
                return Err(Error::InvariantViolated(format!("ri rec cl E direction {y} rejected")));
            }
        }
    }
    Ok(RecessionReport { rec_cl, lineality, span_condition, inner_bound, membership_answers })
}

/// Evaluates "every z ∈ rec cl E with A z = 0 lies in the lineality space".
/// When it holds, `cl A E = A cl E` and `rec A cl E = A rec cl E` are verified.
pub fn closedness_check(e: &NcSet, a: &LinMap) -> Result<bool> {
    require_nc(e)?;
    let k = closure(e);
    if e.is_empty() {
        return Ok(true);
    }
    let lin = poly::lineality(&k)?;
    let mut z = recession(&k)?;
    for row in &a.matrix {
        z.eq.push(Row::new(row.clone(), Q::zero()));
    }
    let zv = hrep_to_vrep(&z);
    let holds = zv.rays.iter().chain(&zv.lines).all(|g| solve_in_span(g, &lin).is_some());
    if holds {
        let image = linear_image(&hrep_to_vrep(&k), a);
        if !poly_equal(&closure(&nc_image(e, a)), &poly::vrep_to_hrep(&image)) {
            return Err(Error::InvariantViolated("cl A E differs from A cl E".into()));
        }
        let rec_img = recession(&poly::vrep_to_hrep(&image))?;
        let a_rec = linear_image(&hrep_to_vrep(&recession(&k)?), &a.clone().with_offset(QVec::zeros(a.target_dim())));
        if !poly_equal(&rec_img, &poly::vrep_to_hrep(&a_rec)) {
            return Err(Error::InvariantViolated("rec A cl E differs from A rec cl E".into()));
        }
    }
    Ok(holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    /// [-1,1] x R without the open segments {±1} x (-1,1).
    fn strip() -> NcSet {
        let open = HRep::universe(2).with_lt(&[1, 0], q(1)).with_lt(&[-1, 0], q(1));
        let mut e = NcSet::from_piece(open);
        for s in [1, -1] {
            e = e
                .with(HRep::universe(2).with_eq(&[1, 0], q(s)).with_le(&[0, -1], q(-1)))
                .with(HRep::universe(2).with_eq(&[1, 0], q(s)).with_le(&[0, 1], q(-1)));
        }
        e
    }

    #[test]
    fn strip_is_unbounded_without_recession_directions() {
        let e = strip();
        assert!(!rec_membership(&e, &QVec::from_ints(&[0, 1])));
        assert!(!rec_membership(&e, &QVec::from_ints(&[0, -1])));
        assert!(rec_membership(&e, &QVec::zeros(2)));
        assert!(!is_bounded(&e).unwrap());
        let rep = rec_classify(&e).unwrap();
        assert!(!rep.span_condition);
        assert_eq!(hrep_to_vrep(&rep.rec_cl).lines, vec![QVec::from_ints(&[0, 1])]);
    }

    #[test]
    fn open_half_plane_with_origin() {
        let e = NcSet::from_piece(HRep::universe(2).with_lt(&[-1, 0], q(0))).with(HRep::point(&QVec::zeros(2)));
        let rep = rec_classify(&e).unwrap();
        assert!(rep.span_condition);
        assert!(poly_equal(&rep.rec_cl, &HRep::universe(2).with_le(&[-1, 0], q(0))));
        for (y, ok) in &rep.membership_answers {
            if rep.inner_bound.contains(y) {
                assert!(ok, "{y}");
            }
        }
        // the boundary direction (0,1) moves the origin out of E
        assert!(!rec_membership(&e, &QVec::from_ints(&[0, 1])));
    }

    #[test]
    fn bounded_sets() {
        let sq = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), false));
        assert!(is_bounded(&sq).unwrap());
        let rep = rec_classify(&sq).unwrap();
        assert!(!rep.span_condition);
        let half = NcSet::from_piece(HRep::universe(2).with_le(&[-1, 0], q(0)));
        assert!(!is_bounded(&half).unwrap());
    }

    #[test]
    fn closedness_hypothesis() {
        let proj = LinMap::from_ints(&[&[1, 0]]);
        let sq = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), false));
        assert!(closedness_check(&sq, &proj).unwrap());
        let upper = NcSet::from_piece(HRep::universe(2).with_le(&[0, -1], q(0)));
        assert!(!closedness_check(&upper, &proj).unwrap());
        let band = NcSet::from_piece(HRep::universe(2).with_le(&[0, -1], q(0)).with_le(&[0, 1], q(1)));
        assert!(closedness_check(&band, &proj).unwrap());
    }
}
