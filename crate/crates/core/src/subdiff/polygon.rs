//! Functions on planar polyhedra whose subdifferential domain is the polygon
//! with some open edges removed and every vertex kept.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{precompose, precompose_affine, rotation_45, sum_fn, ConvexFn, Interval};
use crate::error::{Error, Result};
use crate::ncset::NcSet;
use crate::num::{q, QSqrt2, QVec, Q};
use crate::poly::{self, canonical_closed, hrep_to_vrep, HRep, Row};

/// A relatively open boundary piece of a planar polyhedron, with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Edge {
    Segment { from: QVec, to: QVec },
    Ray { from: QVec, dir: QVec },
    Line { through: QVec, dir: QVec },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgePiece {
    pub edge: Edge,
    /// Outward facet row `a·x ≤ b` carrying the piece.
    pub facet: Row,
}

impl EdgePiece {
    fn endpoints(&self) -> Vec<QVec> {
        match &self.edge {
            Edge::Segment { from, to } => vec![from.clone(), to.clone()],
            Edge::Ray { from, .. } => vec![from.clone()],
            Edge::Line { .. } => vec![],
        }
    }

    /// The open piece itself.
    fn open_cell(&self) -> HRep {
        let mut h = HRep::universe(2);
        h.eq.push(self.facet.clone());
        match &self.edge {
            Edge::Segment { from, to } => {
                let d = to.sub(from);
                h.lt.push(Row::new(d.clone(), d.dot(to)));
                h.lt.push(Row::new(d.neg(), -d.dot(from)));
            }
            Edge::Ray { from, dir } => h.lt.push(Row::new(dir.neg(), -dir.dot(from))),
            Edge::Line { .. } => {}
        }
        h
    }
}

fn closed_polygon(c: &HRep) -> Result<HRep> {
    if c.dim != 2 {
        return Err(Error::Not2d);
    }
    let cc = c.closure();
    if poly::is_empty(&cc) {
        return Err(Error::NotFullDim);
    }
    let cc = canonical_closed(&cc);
    if !cc.eq.is_empty() {
        return Err(Error::NotFullDim);
    }
    Ok(cc)
}

/// Boundary pieces of `cl C`, facet by facet. Each `mark` on the boundary
/// becomes an extra vertex splitting the edge that carries it.
pub fn polygon_edges(c: &HRep, marks: &[QVec]) -> Result<Vec<EdgePiece>> {
    let cc = closed_polygon(c)?;
    let mut out = Vec::new();
    let mut used = vec![false; marks.len()];
    for facet in &cc.le {
        let mut face = cc.clone();
        face.le.retain(|r| r != facet);
        face.eq.push(facet.clone());
        let v = hrep_to_vrep(&face);
        let (base, dir, mut cuts, open_back) = if let Some(l) = v.lines.first() {
            (v.points[0].clone(), l.clone(), vec![], true)
        } else if let Some(r) = v.rays.first() {
            (v.points[0].clone(), r.clone(), vec![v.points[0].clone()], false)
        } else {
            let d = v.points[1].sub(&v.points[0]);
            (v.points[0].clone(), d, v.points.clone(), false)
        };
        for (m, u) in marks.iter().zip(used.iter_mut()) {
            if face.contains(m) {
                *u = true;
                if !cuts.contains(m) {
                    cuts.push(m.clone());
                }
            }
        }
        let t = |p: &QVec| dir.dot(&p.sub(&base));
        cuts.sort_by_key(|a| t(a));
        let unbounded_front = !v.rays.is_empty() || !v.lines.is_empty();
        let piece = |edge| EdgePiece { edge, facet: facet.clone() };
        if cuts.is_empty() {
            out.push(piece(Edge::Line { through: base, dir }));
            continue;
        }
        if open_back {
            out.push(piece(Edge::Ray { from: cuts[0].clone(), dir: dir.neg() }));
        }
        for w in cuts.windows(2) {
            out.push(piece(Edge::Segment { from: w[0].clone(), to: w[1].clone() }));
        }
        if unbounded_front {
            out.push(piece(Edge::Ray { from: cuts[cuts.len() - 1].clone(), dir }));
        }
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(Error::BadParameter(format!("mark {} is not on the boundary", marks[i])));
    }
    Ok(out)
}

/// A constructed function together with the domain it is built to have.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub f: ConvexFn,
    pub predicted_dom: NcSet,
    pub edges: Vec<EdgePiece>,
    pub removed: Vec<usize>,
}

fn rat(x: &Q) -> QSqrt2 {
    QSqrt2::from(x)
}

fn rat_row(v: &QVec) -> Vec<QSqrt2> {
    v.iter().map(rat).collect()
}

/// Unit vector `v / |v|` when `|v|` lies in the field.
fn unit(v: &QVec) -> Option<(Vec<QSqrt2>, QSqrt2)> {
    let len = QSqrt2::from(&v.dot(v)).sqrt()?;
    let inv = len.inv();
    Some((v.iter().map(|c| &rat(c) * &inv).collect(), len))
}

/// The function removing one open boundary piece and nothing else from `cl C`.
fn removal(piece: &EdgePiece) -> Result<ConvexFn> {
    let inward = piece.facet.a.neg();
    match &piece.edge {
        Edge::Segment { from, to } => {
            let e = to.sub(from);
            let mid = from.add(to).scale(&(Q::one() / q(2)));
            if let (Some((u, _)), Some((w, len))) = (unit(&inward), unit(&e)) {
                let alpha = len * QSqrt2::rational(Q::one() / q(2));
                return precompose_affine(ConvexFn::rockafellar(alpha)?, vec![u, w], mid);
            }
            let stretch = Q::from_integer(2.into()) / e.dot(&e);
            precompose_affine(ConvexFn::rockafellar(QSqrt2::one())?, vec![rat_row(&inward), rat_row(&e.scale(&stretch))], mid)
        }
        Edge::Ray { from, dir } => {
            precompose_affine(ConvexFn::halfstrip(QSqrt2::zero())?, vec![rat_row(&inward), rat_row(&dir.neg())], from.clone())
        }
        Edge::Line { through, .. } => {
            let open_ray = ConvexFn::interval(Interval::Open { lo: Some(Q::zero()), hi: None })?;
            precompose_affine(open_ray, vec![rat_row(&inward)], through.clone())
        }
    }
}

/// `ι_{cl C}` plus one term per removed piece; `remove` indexes [`polygon_edges`].
pub fn assemble_polygon_fn(c: &HRep, marks: &[QVec], remove: &[usize]) -> Result<Assembly> {
    let cc = closed_polygon(c)?;
    let edges = polygon_edges(&cc, marks)?;
    if let Some(&bad) = remove.iter().find(|&&i| i >= edges.len()) {
        return Err(Error::BadParameter(format!("edge {bad} out of range (have {})", edges.len())));
    }
    let mut terms = vec![ConvexFn::indicator(&cc)?];
    for &i in remove {
        terms.push(removal(&edges[i])?);
    }
    let f = sum_fn(terms)?;

    let mut interior = cc.clone();
    interior.lt = std::mem::take(&mut interior.le);
    let mut cells = vec![interior];
    let mut vertices: Vec<QVec> = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if !remove.contains(&i) {
            cells.push(e.open_cell());
        }
        for p in e.endpoints() {
            if !vertices.contains(&p) {
                vertices.push(p);
            }
        }
    }
    cells.extend(vertices.iter().map(HRep::point));
    let predicted_dom = NcSet::new(2, cells).canonicalize();
    Ok(Assembly { f, predicted_dom, edges, removed: remove.to_vec() })
}

/// The closed quadrilateral with vertices `(±1, 1)`, `(±3, −1)`.
pub fn ncpolygon_region() -> HRep {
    HRep::universe(2)
        .with_le(&[0, 1], q(1))
        .with_le(&[0, -1], q(1))
        .with_le(&[-1, 1], q(2))
        .with_le(&[1, 1], q(2))
}

/// The open quadrilateral together with its four vertices.
pub fn ncpolygon_golden() -> NcSet {
    let open = HRep::universe(2)
        .with_lt(&[1, 0], q(3))
        .with_lt(&[-1, 0], q(3))
        .with_lt(&[0, 1], q(1))
        .with_lt(&[0, -1], q(1))
        .with_lt(&[-1, 1], q(2))
        .with_lt(&[1, 1], q(2));
    let mut e = NcSet::from_piece(open);
    for v in [[1, 1], [-1, 1], [3, -1], [-3, -1]] {
        e = e.with(HRep::point(&QVec::from_ints(&v)));
    }
    e
}

/// Four rotated Rockafellar functions, one per edge of the quadrilateral,
/// translated to the edge midpoints.
pub fn ncpolygon() -> Result<ConvexFn> {
    let one = QSqrt2::one();
    let term = |alpha: QSqrt2, k: i32, t: [i64; 2]| -> Result<ConvexFn> {
        let (c, s) = rotation_45(k);
        precompose(ConvexFn::rockafellar(alpha)?, &c, &s, &QVec::from_ints(&t), &one)
    };
    sum_fn(vec![
        term(QSqrt2::sqrt2(), 1, [-2, 0])?,
        term(QSqrt2::rational(q(3)), -2, [0, -1])?,
        term(QSqrt2::rational(q(1)), 2, [0, 1])?,
        term(QSqrt2::sqrt2(), 3, [2, 0])?,
    ])
}

/// Every point of `c` nearest to `x`.
pub fn project_finite(c: &[QVec], x: &QVec) -> Result<Vec<QVec>> {
    let d2 = |p: &QVec| {
        let d = p.sub(x);
        d.dot(&d)
    };
    let best = c.iter().map(d2).min().ok_or(Error::EmptySet)?;
    let mut out: Vec<QVec> = Vec::new();
    for p in c {
        if d2(p) == best && !out.contains(p) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncset::{is_nearly_convex, set_equal};
    use crate::num::qr;

    fn unit_square() -> HRep {
        HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), false)
    }

    #[test]
    fn square_edges_and_no_removal() {
        let edges = polygon_edges(&unit_square(), &[]).unwrap();
        assert_eq!(edges.len(), 4);
        assert!(edges.iter().all(|e| matches!(e.edge, Edge::Segment { .. })));
        let a = assemble_polygon_fn(&unit_square(), &[], &[]).unwrap();
        assert!(set_equal(&a.predicted_dom, &NcSet::from_piece(unit_square())));
        assert!(set_equal(&a.f.dom_subdiff().unwrap(), &a.predicted_dom));
    }

    #[test]
    fn quadrilateral_matches_the_golden_set() {
        let all: Vec<usize> = (0..4).collect();
        let a = assemble_polygon_fn(&ncpolygon_region(), &[], &all).unwrap();
        assert!(set_equal(&a.predicted_dom, &ncpolygon_golden()));
        assert!(set_equal(&a.f.dom_subdiff().unwrap(), &ncpolygon_golden()));
        let f = ncpolygon().unwrap();
        let d = f.dom_subdiff().unwrap();
        assert!(set_equal(&d, &ncpolygon_golden()));
        assert!(is_nearly_convex(&d).verdict);
    }

    #[test]
    fn half_plane_with_lower_ray_removed() {
        let c = HRep::universe(2).with_le(&[-1, 0], q(0));
        let origin = QVec::zeros(2);
        let edges = polygon_edges(&c, &[origin]).unwrap();
        assert_eq!(edges.len(), 2);
        let lower = edges
            .iter()
            .position(|e| matches!(&e.edge, Edge::Ray { dir, .. } if dir[1] < Q::zero()))
            .unwrap();
        let a = assemble_polygon_fn(&c, &[QVec::zeros(2)], &[lower]).unwrap();
        let want = NcSet::from_piece(HRep::universe(2).with_lt(&[-1, 0], q(0)))
            .with(HRep::universe(2).with_eq(&[1, 0], q(0)).with_le(&[0, -1], q(0)));
        assert!(set_equal(&a.predicted_dom, &want));
        assert!(set_equal(&a.f.dom_subdiff().unwrap(), &want));
    }

    #[test]
    fn skew_edge_uses_a_rational_map() {
        // the edge from (0,0) to (2,1) has length √5
        let tri = HRep::universe(2).with_le(&[1, -2], q(0)).with_le(&[0, 1], q(1)).with_le(&[-1, 0], q(0));
        let edges = polygon_edges(&tri, &[]).unwrap();
        let i = edges.iter().position(|e| e.facet.a == QVec::from_ints(&[1, -2])).unwrap();
        let a = assemble_polygon_fn(&tri, &[], &[i]).unwrap();
        assert!(set_equal(&a.f.dom_subdiff().unwrap(), &a.predicted_dom));
        assert!(!a.predicted_dom.contains(&QVec::from_ratios(&[(1, 1), (1, 2)])));
        assert!(a.predicted_dom.contains(&QVec::from_ints(&[2, 1])));
    }

    #[test]
    fn degenerate_inputs() {
        let seg = HRep::universe(2).with_eq(&[0, 1], q(0)).with_le(&[1, 0], q(1)).with_le(&[-1, 0], q(0));
        assert!(matches!(assemble_polygon_fn(&seg, &[], &[]), Err(Error::NotFullDim)));
        assert!(matches!(assemble_polygon_fn(&HRep::universe(3), &[], &[]), Err(Error::Not2d)));
    }

    #[test]
    fn nearest_points() {
        let c = vec![QVec::from_ints(&[0, 0]), QVec::from_ints(&[2, 0])];
        assert_eq!(project_finite(&c, &QVec(vec![qr(6, 5), q(0)])).unwrap(), vec![QVec::from_ints(&[2, 0])]);
        assert_eq!(project_finite(&c, &QVec::from_ints(&[1, 5])).unwrap().len(), 2);
        assert_eq!(project_finite(&c, &c[0]).unwrap(), vec![c[0].clone()]);
        assert!(project_finite(&[], &c[0]).is_err());
    }
}
