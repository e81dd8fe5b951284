//! Set operations on single polyhedra.

use num_traits::Zero;

use super::dd::{hrep_to_vrep, vrep_to_hrep};
use super::lp::{maximize, strict_feasible, LpResult};
use super::{HRep, LinMap, Row, VRep};
use crate::error::{Error, Result};
use crate::num::{null_space, QVec, Q};

pub fn is_empty(h: &HRep) -> bool {
    strict_feasible(h).is_none()
}

pub fn intersects(a: &HRep, b: &HRep) -> bool {
    !is_empty(&a.intersect(b))
}

/// Supremum of `a . x` over the closure of `h`; `None` when unbounded.
/// The caller guarantees `h` is nonempty.
pub fn sup_over(h: &HRep, a: &QVec) -> Option<Q> {
    let mut le = h.le.clone();
    le.extend(h.lt.iter().cloned());
    match maximize(a, &h.eq, &le) {
        LpResult::Optimal { value, .. } => Some(value),
        LpResult::Unbounded => None,
        LpResult::Infeasible => panic!("sup_over called on an empty system"),
    }
}

/// Whether the nonempty set `inner` satisfies `row` (strictly when `strict`).
fn satisfies(inner: &HRep, row: &Row, strict: bool) -> bool {
    match sup_over(inner, &row.a) {
        None => false,
        Some(s) if s < row.b => true,
        Some(s) if s > row.b => false,
        Some(_) => {
            if !strict {
                return true;
            }
            let mut touch = inner.clone();
            touch.eq.push(row.clone());
            is_empty(&touch)
        }
    }
}

/// `inner ⊆ outer`, exactly.
pub fn contains_poly(outer: &HRep, inner: &HRep) -> bool {
    let Some(w) = strict_feasible(inner) else {
        return true;
    };
    if !outer.contains(&w) {
        return false;
    }
    outer.eq.iter().all(|r| satisfies(inner, r, false) && satisfies(inner, &r.neg(), false))
        && outer.le.iter().all(|r| satisfies(inner, r, false))
        && outer.lt.iter().all(|r| satisfies(inner, r, true))
}

/// Point-set equality.
pub fn poly_equal(a: &HRep, b: &HRep) -> bool {
    contains_poly(a, b) && contains_poly(b, a)
}

/// Canonical form of the closure: minimal equalities and facet rows.
pub fn canonical_closed(h: &HRep) -> HRep {
    vrep_to_hrep(&hrep_to_vrep(h))
}

/// Affine dimension and a minimal equality system of `aff h`.
pub fn affine_hull(h: &HRep) -> Result<(usize, Vec<Row>)> {
    if is_empty(h) {
        return Err(Error::EmptySet);
    }
    let c = canonical_closed(h);
    Ok((h.dim - c.eq.len(), c.eq))
}

/// Relative interior of a nonempty convex set given by any row system:
/// equalities of the affine hull plus every facet made strict.
pub fn rel_interior(h: &HRep) -> HRep {
    if is_empty(h) {
        return HRep::empty(h.dim);
    }
    let mut c = canonical_closed(h);
    c.lt = std::mem::take(&mut c.le);
    c
}

pub fn linear_image(v: &VRep, a: &LinMap) -> VRep {
    let m = a.target_dim();
    if v.is_empty() {
        return VRep::empty(m);
    }
    let image = VRep {
        dim: m,
        points: v.points.iter().map(|p| a.apply(p)).collect(),
        rays: v.rays.iter().map(|r| a.apply_linear(r)).filter(|r| !r.is_zero()).collect(),
        lines: v.lines.iter().map(|l| a.apply_linear(l)).filter(|l| !l.is_zero()).collect(),
    };
    hrep_to_vrep(&vrep_to_hrep(&image))
}

/// `{x : A x ∈ h}` by substituting the map into every row.
pub fn preimage(h: &HRep, a: &LinMap) -> HRep {
    let pull = |r: &Row| Row::new(a.pull_normal(&r.a), &r.b - r.a.dot(&a.offset));
    HRep {
        dim: a.source_dim,
        eq: h.eq.iter().map(pull).collect(),
        le: h.le.iter().map(pull).collect(),
        lt: h.lt.iter().map(pull).collect(),
    }
}

pub fn minkowski_sum(v1: &VRep, v2: &VRep) -> VRep {
    if v1.is_empty() || v2.is_empty() {
        return VRep::empty(v1.dim);
    }
    let mut points = Vec::new();
    for p in &v1.points {
        for q in &v2.points {
            points.push(p.add(q));
        }
    }
    let sum = VRep {
        dim: v1.dim,
        points,
        rays: v1.rays.iter().chain(&v2.rays).cloned().collect(),
        lines: v1.lines.iter().chain(&v2.lines).cloned().collect(),
    };
    hrep_to_vrep(&vrep_to_hrep(&sum))
}

/// Recession cone of the closure: `{y : A y <= 0, C y = 0}`.
pub fn recession(h: &HRep) -> Result<HRep> {
    if is_empty(h) {
        return Err(Error::EmptySet);
    }
    let hom = |r: &Row| Row::new(r.a.clone(), Q::zero());
    Ok(HRep {
        dim: h.dim,
        eq: h.eq.iter().map(hom).collect(),
        le: h.le.iter().chain(&h.lt).map(hom).collect(),
        lt: vec![],
    })
}

/// Basis of the lineality space of the closure.
pub fn lineality(h: &HRep) -> Result<Vec<QVec>> {
    if is_empty(h) {
        return Err(Error::EmptySet);
    }
    let normals: Vec<QVec> = h.rows().map(|r| r.a.clone()).collect();
    Ok(null_space(&normals, h.dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qr};

    fn square() -> HRep {
        HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), false)
    }

    #[test]
    fn affine_hulls() {
        let seg = vrep_to_hrep(&VRep::from_points(2, vec![QVec::from_ints(&[0, 0]), QVec::from_ints(&[1, 1])]));
        let (d, eq) = affine_hull(&seg).unwrap();
        assert_eq!((d, eq.len()), (1, 1));
        assert_eq!(affine_hull(&square()).unwrap(), (2, vec![]));
        let (d, eq) = affine_hull(&HRep::point(&QVec::from_ints(&[3, 4]))).unwrap();
        assert_eq!((d, eq.len()), (0, 2));
        assert!(matches!(affine_hull(&HRep::empty(2)), Err(Error::EmptySet)));
    }

    #[test]
    fn images_of_generators() {
        let proj = LinMap::from_ints(&[&[1, 0]]);
        let seg = linear_image(&hrep_to_vrep(&square()), &proj);
        assert_eq!(seg.points, vec![QVec::from_ints(&[0]), QVec::from_ints(&[1])]);
        let half = HRep::universe(2).with_le(&[-1, 0], q(0));
        let ray = linear_image(&hrep_to_vrep(&half), &proj);
        assert_eq!(ray.points, vec![QVec::from_ints(&[0])]);
        assert_eq!(ray.rays, vec![QVec::from_ints(&[1])]);
        let tri = VRep::from_points(2, vec![QVec::from_ints(&[0, 0]), QVec::from_ints(&[1, 0]), QVec::from_ints(&[0, 1])]);
        let big = linear_image(&tri, &LinMap::from_ints(&[&[2, 0], &[0, 2]]));
        assert_eq!(big.points, vec![QVec::from_ints(&[0, 0]), QVec::from_ints(&[0, 2]), QVec::from_ints(&[2, 0])]);
    }

    #[test]
    fn preimages_by_substitution() {
        let line = LinMap::from_ints(&[&[1], &[0]]);
        let sq = HRep::boxed(&QVec::from_ints(&[-1, -1]), &QVec::from_ints(&[1, 1]), false);
        let pre = preimage(&sq, &line);
        assert!(poly_equal(&pre, &HRep::boxed(&QVec::from_ints(&[-1]), &QVec::from_ints(&[1]), false)));
        let high = line.clone().with_offset(QVec::from_ints(&[0, 5]));
        assert!(is_empty(&preimage(&square(), &high)));
        assert!(poly_equal(&preimage(&square(), &LinMap::identity(2)), &square()));
    }

    #[test]
    fn minkowski_sums() {
        let sq = hrep_to_vrep(&square());
        let two = minkowski_sum(&sq, &sq);
        assert!(poly_equal(&vrep_to_hrep(&two), &HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[2, 2]), false)));
        let origin = VRep::from_points(2, vec![QVec::zeros(2)]);
        assert_eq!(minkowski_sum(&origin, &sq), sq);
        let e1 = VRep::from_points(2, vec![QVec::zeros(2), QVec::unit(2, 0)]);
        let e2 = VRep::from_points(2, vec![QVec::zeros(2), QVec::unit(2, 1)]);
        assert_eq!(minkowski_sum(&e1, &e2), sq);
    }

    #[test]
    fn recession_cones_and_lineality() {
        let strip = HRep::universe(2).with_le(&[1, 0], q(1)).with_le(&[-1, 0], q(1));
        let rec = recession(&strip).unwrap();
        let v = hrep_to_vrep(&rec);
        assert_eq!(v.lines, vec![QVec::from_ints(&[0, 1])]);
        assert!(v.rays.is_empty());
        assert_eq!(lineality(&strip).unwrap(), vec![QVec::from_ints(&[0, 1])]);
        let cone = HRep::universe(2).with_le(&[-1, 0], q(0)).with_le(&[1, -1], q(0));
        assert!(poly_equal(&recession(&cone).unwrap(), &cone));
        let tri = vrep_to_hrep(&VRep::from_points(2, vec![QVec::zeros(2), QVec::unit(2, 0), QVec::unit(2, 1)]));
        assert!(poly_equal(&recession(&tri).unwrap(), &HRep::point(&QVec::zeros(2))));
    }

    #[test]
    fn equality_of_point_sets() {
        let a = HRep::universe(1).with_le(&[1], q(1));
        let b = a.clone().with_le(&[1], q(2));
        assert!(poly_equal(&a, &b));
        let closed = HRep::boxed(&QVec::from_ints(&[0]), &QVec::from_ints(&[1]), false);
        let half_open = HRep::universe(1).with_le(&[-1], q(0)).with_lt(&[1], q(1));
        assert!(!poly_equal(&closed, &half_open));
        assert!(poly_equal(&HRep::empty(2), &HRep::universe(2).with_lt(&[1, 0], q(0)).with_lt(&[-1, 0], q(0))));
        assert!(contains_poly(&closed, &HRep::point(&QVec(vec![qr(1, 3)]))));
    }

    #[test]
    fn relative_interior_of_segment() {
        let seg = vrep_to_hrep(&VRep::from_points(2, vec![QVec::from_ints(&[0, 0]), QVec::from_ints(&[1, 1])]));
        let ri = rel_interior(&seg);
        assert!(ri.contains(&QVec(vec![qr(1, 2), qr(1, 2)])));
        assert!(!ri.contains(&QVec::from_ints(&[0, 0])));
    }
}
