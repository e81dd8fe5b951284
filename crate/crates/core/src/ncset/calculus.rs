//! Closure, relative interior and the operations that preserve near convexity.

use num_traits::Zero;

use super::{uncovered_point, NcSet};
use crate::error::{Error, Result};
use crate::num::{QVec, Q};
use crate::poly::{
    self, faces, hrep_to_vrep, linear_image, minkowski_sum, poly_equal, preimage, strata, strict_feasible, HRep,
    LinMap, VRep,
};

/// Outcome of the near-convexity decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: bool,
    /// A point of `ri conv E` outside `E`, when the verdict is false.
    pub witness: Option<QVec>,
    /// The convex set `C = ri cl E` with `C ⊆ E ⊆ cl C`, when the verdict is true
    /// and `E` is nonempty.
    pub core: Option<HRep>,
}

/// Closed convex hull of the piece closures. For nearly convex sets this is the closure.
pub fn closure(e: &NcSet) -> HRep {
    poly::vrep_to_hrep(&e.hull())
}

/// Decides `ri conv E ⊆ E` exactly.
pub fn is_nearly_convex(e: &NcSet) -> Certificate {
    let k = closure(e);
    if e.is_empty() {
        return Certificate { verdict: true, witness: None, core: None };
    }
    let ri = poly::rel_interior(&k);
    match uncovered_point(&ri, &e.pieces) {
        Some(w) => Certificate { verdict: false, witness: Some(w), core: None },
        None => Certificate { verdict: true, witness: None, core: Some(ri) },
    }
}

fn require_nc(e: &NcSet) -> Result<()> {
    if is_nearly_convex(e).verdict {
        Ok(())
    } else {
        Err(Error::NotNearlyConvex)
    }
}

pub fn rel_interior(e: &NcSet) -> Result<HRep> {
    require_nc(e)?;
    Ok(poly::rel_interior(&closure(e)))
}

/// Near equality: same closure and same relative interior.
pub fn nearly_equal(a: &NcSet, b: &NcSet) -> Result<bool> {
    require_nc(a)?;
    require_nc(b)?;
    Ok(poly_equal(&closure(a), &closure(b)))
}

/// Splits `E` into `ri E` and the relatively open boundary faces of `cl E` it contains.
pub fn decompose(e: &NcSet) -> Result<(HRep, NcSet)> {
    require_nc(e)?;
    let k = closure(e);
    let core = poly::rel_interior(&k);
    let boundary = if e.is_empty() {
        vec![]
    } else {
        faces(&k)?.into_iter().filter(|f| e.contains(&f.point)).map(|f| f.relint).collect()
    };
    Ok((core, NcSet::new(e.dim, boundary)))
}

/// The interior, which equals `ri E` when `cl E` is full-dimensional and is empty otherwise.
pub fn interior_core(e: &NcSet) -> Result<HRep> {
    require_nc(e)?;
    let k = closure(e);
    if e.is_empty() || !k.eq.is_empty() {
        return Ok(HRep::empty(e.dim));
    }
    Ok(poly::rel_interior(&k))
}

pub fn nc_scale(e: &NcSet, lambda: &Q) -> NcSet {
    if lambda.is_zero() {
        return if e.is_empty() { NcSet::empty(e.dim) } else { NcSet::point(&QVec::zeros(e.dim)).canonicalize() };
    }
    let scale = |rows: &[poly::Row]| rows.iter().map(|r| poly::Row::new(r.a.scale(&(Q::from_integer(1.into()) / lambda)), r.b.clone())).collect();
    let pieces = e
        .pieces
        .iter()
        .map(|p| HRep { dim: p.dim, eq: scale(&p.eq), le: scale(&p.le), lt: scale(&p.lt) })
        .collect();
    NcSet::new(e.dim, pieces).canonicalize()
}

/// Cartesian product, coordinates in argument order.
pub fn nc_product(es: &[NcSet]) -> NcSet {
    let mut acc = NcSet::new(0, vec![HRep::universe(0)]);
    for e in es {
        let mut pieces = Vec::new();
        for a in &acc.pieces {
            for b in &e.pieces {
                pieces.push(a.product(b));
            }
        }
        acc = NcSet::new(acc.dim + e.dim, pieces);
    }
    acc.canonicalize()
}

fn relint_of(v: &VRep) -> HRep {
    poly::rel_interior(&poly::vrep_to_hrep(v))
}

/// Exact Minkowski sum, piece by piece. Closed pieces add directly; otherwise
/// pieces are split into relatively open faces and `ri F + ri G = ri (F + G)`.
pub fn nc_sum(a: &NcSet, b: &NcSet) -> NcSet {
    let mut pieces = Vec::new();
    for p in a.live() {
        for q in b.live() {
            if p.is_closed() && q.is_closed() {
                pieces.push(poly::vrep_to_hrep(&minkowski_sum(&hrep_to_vrep(p), &hrep_to_vrep(q))));
                continue;
            }
            let sp: Vec<VRep> = strata(p).iter().map(hrep_to_vrep).collect();
            let sq: Vec<VRep> = strata(q).iter().map(hrep_to_vrep).collect();
            for u in &sp {
                for v in &sq {
                    pieces.push(relint_of(&minkowski_sum(u, v)));
                }
            }
        }
    }
    NcSet::new(a.dim, pieces).canonicalize()
}

/// Image under an affine map, using `A (ri F) = ri (A F)` on relatively open faces.
pub fn nc_image(e: &NcSet, a: &LinMap) -> NcSet {
    let m = a.target_dim();
    let mut pieces = Vec::new();
    for p in e.live() {
        if p.is_closed() {
            pieces.push(poly::vrep_to_hrep(&linear_image(&hrep_to_vrep(p), a)));
            continue;
        }
        for s in strata(p) {
            pieces.push(relint_of(&linear_image(&hrep_to_vrep(&s), a)));
        }
    }
    NcSet::new(m, pieces).canonicalize()
}

/// Preimage under an affine map, guarded by `A^-1 (ri E) ≠ ∅`.
pub fn nc_preimage(e: &NcSet, a: &LinMap) -> Result<NcSet> {
    let ri = rel_interior(e)?;
    if strict_feasible(&preimage(&ri, a)).is_none() {
        return Err(Error::CqViolated("the map misses the relative interior".into()));
    }
    let pieces = e.pieces.iter().map(|p| preimage(p, a)).collect();
    Ok(NcSet::new(a.source_dim, pieces).canonicalize())
}

/// Intersection guarded by `⋂ ri E_i ≠ ∅`; both the relative-interior and the
/// closure identities are checked on the result.
pub fn nc_intersect(es: &[NcSet]) -> Result<NcSet> {
    let Some(first) = es.first() else {
        return Err(Error::EmptySet);
    };
    let dim = first.dim;
    let mut ri_all = HRep::universe(dim);
    let mut cl_all = HRep::universe(dim);
    for e in es {
        if e.dim != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: e.dim });
        }
        ri_all = ri_all.intersect(&rel_interior(e)?);
        cl_all = cl_all.intersect(&closure(e));
    }
    if strict_feasible(&ri_all).is_none() {
        return Err(Error::CqViolated("relative interiors have empty intersection".into()));
    }
    let mut acc: Vec<HRep> = vec![HRep::universe(dim)];
    for e in es {
        let mut next = Vec::new();
        for p in &acc {
            for q in e.live() {
                let r = p.intersect(q);
                if strict_feasible(&r).is_some() {
                    next.push(r);
                }
            }
        }
        acc = next;
    }
    let out = NcSet::new(dim, acc).canonicalize();
    let cl = closure(&out);
    if !poly_equal(&cl, &cl_all) {
        return Err(Error::InvariantViolated("closure of intersection".into()));
    }
    if !poly_equal(&poly::rel_interior(&cl), &ri_all) {
        return Err(Error::InvariantViolated("relative interior of intersection".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncset::set_equal;
    use crate::num::{q, qr};

    /// Open strip over (-1,1) with the two bottom corners.
    fn strip_with_corners(w: i64) -> NcSet {
        let strip = HRep::universe(2).with_lt(&[1, 0], q(w)).with_lt(&[-1, 0], q(w)).with_lt(&[0, -1], q(0));
        NcSet::from_piece(strip).with(HRep::point(&QVec::from_ints(&[-w, 0]))).with(HRep::point(&QVec::from_ints(&[w, 0])))
    }

    fn square(closed: bool) -> HRep {
        HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), !closed)
    }

    #[test]
    fn closure_and_ri_of_strip_set() {
        let c = strip_with_corners(1);
        let cl = closure(&c);
        let want = HRep::universe(2).with_le(&[1, 0], q(1)).with_le(&[-1, 0], q(1)).with_le(&[0, -1], q(0));
        assert!(poly_equal(&cl, &want));
        let ri = rel_interior(&c).unwrap();
        assert!(poly_equal(&ri, &c.pieces[0]));
        let p = NcSet::point(&QVec::from_ints(&[2, 3]));
        assert!(poly_equal(&rel_interior(&p).unwrap(), &p.pieces[0]));
    }

    #[test]
    fn near_convexity_verdicts() {
        let up = HRep::universe(2).with_eq(&[1, 0], q(0)).with_le(&[0, -1], q(-1));
        let down = HRep::universe(2).with_eq(&[1, 0], q(0)).with_le(&[0, 1], q(-1));
        let rays = NcSet::new(2, vec![up.clone(), down.clone()]);
        let cert = is_nearly_convex(&rays);
        assert!(!cert.verdict);
        assert_eq!(cert.witness, Some(QVec::zeros(2)));

        assert!(is_nearly_convex(&NcSet::from_piece(square(true))).verdict);

        let half = HRep::universe(2).with_lt(&[-1, 0], q(0));
        let dom = NcSet::new(2, vec![half, up, down]);
        assert!(is_nearly_convex(&dom).verdict);
    }

    #[test]
    fn near_equality() {
        let c = strip_with_corners(1);
        let hull = NcSet::from_piece(closure(&c));
        assert!(nearly_equal(&c, &hull).unwrap());
        let a = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[0]), &QVec::from_ints(&[1]), false));
        let b = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[2]), &QVec::from_ints(&[3]), false));
        assert!(!nearly_equal(&a, &b).unwrap());
    }

    #[test]
    fn decomposition_into_core_and_boundary() {
        let (core, s) = decompose(&strip_with_corners(1)).unwrap();
        assert!(core.contains(&QVec(vec![q(0), qr(1, 2)])));
        let pts = NcSet::point(&QVec::from_ints(&[-1, 0])).with(HRep::point(&QVec::from_ints(&[1, 0])));
        assert!(set_equal(&s, &pts));

        let (_, s) = decompose(&NcSet::from_piece(square(true))).unwrap();
        assert_eq!(s.pieces.len(), 8);
        let (_, s) = decompose(&NcSet::from_piece(square(false))).unwrap();
        assert!(s.pieces.is_empty());
    }

    #[test]
    fn interiors() {
        let seg = NcSet::from_piece(HRep::universe(2).with_eq(&[0, 1], q(0)).with_le(&[1, 0], q(1)).with_le(&[-1, 0], q(0)));
        assert!(poly::is_empty(&interior_core(&seg).unwrap()));
        assert!(!poly::is_empty(&rel_interior(&seg).unwrap()));
        let open = interior_core(&NcSet::from_piece(square(true))).unwrap();
        assert!(poly_equal(&open, &square(false)));
    }

    #[test]
    fn scaling_and_products() {
        let two_c = nc_scale(&strip_with_corners(1), &q(2));
        assert!(set_equal(&two_c, &strip_with_corners(2)));
        assert!(set_equal(&nc_scale(&strip_with_corners(1), &q(0)), &NcSet::point(&QVec::zeros(2))));

        let half_open = NcSet::from_piece(HRep::universe(1).with_le(&[-1], q(0)).with_lt(&[1], q(1)));
        let open = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[0]), &QVec::from_ints(&[1]), true));
        let prod = nc_product(&[half_open, open]);
        let ri = rel_interior(&prod).unwrap();
        assert!(poly_equal(&ri, &square(false)));
    }

    #[test]
    fn sum_of_strip_set_gains_origin() {
        let c = strip_with_corners(1);
        let sum = nc_sum(&c, &c);
        let two_c = strip_with_corners(2);
        assert!(!set_equal(&sum, &two_c));
        assert!(set_equal(&sum, &two_c.with(HRep::point(&QVec::zeros(2)))));
        let zero = NcSet::point(&QVec::zeros(2));
        assert!(set_equal(&nc_sum(&c, &zero), &c));
        let unit = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[0]), &QVec::from_ints(&[1]), false));
        let two = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[0]), &QVec::from_ints(&[2]), false));
        assert!(set_equal(&nc_sum(&unit, &unit), &two));
    }

    #[test]
    fn images() {
        let c = strip_with_corners(1);
        let proj = LinMap::from_ints(&[&[1, 0]]);
        let img = nc_image(&c, &proj);
        let seg = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[-1]), &QVec::from_ints(&[1]), false));
        assert!(set_equal(&img, &seg));
        assert!(set_equal(&nc_image(&c, &LinMap::identity(2)), &c));
        let zero = LinMap::from_ints(&[&[0, 0], &[0, 0]]);
        assert_eq!(nc_image(&c, &zero), NcSet::point(&QVec::zeros(2)).canonicalize());
    }

    #[test]
    fn preimages() {
        let c = strip_with_corners(1);
        let lifted = LinMap::from_ints(&[&[1], &[0]]).with_offset(QVec::from_ints(&[0, 1]));
        let pre = nc_preimage(&c, &lifted).unwrap();
        let open = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[-1]), &QVec::from_ints(&[1]), true));
        assert!(set_equal(&pre, &open));
        let below = LinMap::from_ints(&[&[1], &[0]]).with_offset(QVec::from_ints(&[0, -1]));
        assert!(matches!(nc_preimage(&c, &below), Err(Error::CqViolated(_))));
        let axis = LinMap::from_ints(&[&[1], &[0]]);
        assert!(matches!(nc_preimage(&c, &axis), Err(Error::CqViolated(_))));
        assert!(set_equal(&nc_preimage(&c, &LinMap::identity(2)).unwrap(), &c));
    }

    #[test]
    fn intersections() {
        let a = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[2, 2]), false));
        let b = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[1, 0]), &QVec::from_ints(&[3, 2]), false));
        let want = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[1, 0]), &QVec::from_ints(&[2, 2]), false));
        assert!(set_equal(&nc_intersect(&[a.clone(), b]).unwrap(), &want));
        assert!(set_equal(&nc_intersect(&[a.clone(), a.clone()]).unwrap(), &a));

        // closed half-planes with the open segment {0} x (-1,1) removed
        let rays = |sign: i64| {
            NcSet::from_piece(HRep::universe(2).with_lt(&[-sign, 0], q(0)))
                .with(HRep::universe(2).with_eq(&[1, 0], q(0)).with_le(&[0, -1], q(-1)))
                .with(HRep::universe(2).with_eq(&[1, 0], q(0)).with_le(&[0, 1], q(-1)))
        };
        assert!(matches!(nc_intersect(&[rays(1), rays(-1)]), Err(Error::CqViolated(_))));
    }
}
