//! Worked examples checked against exact golden snapshots.

use clap::ValueEnum;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ncset::{
    closure, interior_core, is_bounded, is_nearly_convex, nc_intersect, nc_scale, nc_sum, rec_classify,
    rec_membership, set_equal, uncovered_point, NcSet,
};
use crate::num::{q, qr, QSqrt2, QVec};
use crate::oracle::{suite, OracleReport};
use crate::poly::{self, poly_equal, HRep};
use crate::subdiff::{assemble_polygon_fn, ncpolygon, ncpolygon_region, polygon_edges, ConvexFn, Edge};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// `C + C` for the open strip with two corners.
    Sec2Sum,
    /// Two half-planes missing an open boundary segment.
    Sec2Intersect,
    /// The closed strip missing two open side segments.
    StripRecession,
    /// The modified Rockafellar function with `α = 1`.
    Rockafellar,
    /// The half-strip variant.
    Halfstrip,
    /// The four-function polygon example.
    Ncpolygon,
}

impl Example {
    pub fn tag(self) -> &'static str {
        match self {
            Example::Sec2Sum => "sec2-sum",
            Example::Sec2Intersect => "sec2-intersect",
            Example::StripRecession => "strip-recession",
            Example::Rockafellar => "rockafellar",
            Example::Halfstrip => "halfstrip",
            Example::Ncpolygon => "ncpolygon",
        }
    }
}

#[derive(Deserialize)]
struct Golden {
    tag: String,
    set: NcSet,
}

/// The embedded snapshot for an example.
pub fn golden(example: Example) -> Result<NcSet> {
    let text = match example {
        Example::Sec2Sum => include_str!("../../goldens/sec2-sum.json"),
        Example::Sec2Intersect => include_str!("../../goldens/sec2-intersect.json"),
        Example::StripRecession => include_str!("../../goldens/strip-recession.json"),
        Example::Rockafellar => include_str!("../../goldens/rockafellar.json"),
        Example::Halfstrip => include_str!("../../goldens/halfstrip.json"),
        Example::Ncpolygon => include_str!("../../goldens/ncpolygon.json"),
    };
    let g: Golden = serde_json::from_str(text)?;
    if g.tag != example.tag() {
        return Err(Error::InvariantViolated(format!("golden tagged {} read for {}", g.tag, example.tag())));
    }
    Ok(g.set)
}

/// Checks, the computed set and the set to draw.
#[derive(Clone, Debug)]
pub struct Reproduction {
    pub reports: Vec<OracleReport>,
    pub set: NcSet,
    pub figure: NcSet,
}

fn wit(p: Option<QVec>) -> Vec<f64> {
    p.map(|p| p.to_f64()).unwrap_or_default()
}

/// Open strip `(-1,1) × (0,∞)` with the corners `(±1, 0)`.
pub fn strip_with_corners() -> NcSet {
    let strip = HRep::universe(2).with_lt(&[1, 0], q(1)).with_lt(&[-1, 0], q(1)).with_lt(&[0, -1], q(0));
    NcSet::from_piece(strip).with(HRep::point(&QVec::from_ints(&[-1, 0]))).with(HRep::point(&QVec::from_ints(&[1, 0])))
}

/// The closed half-plane on side `sign` of the vertical axis, minus `{0} × (−1, 1)`.
pub fn half_plane_minus_segment(sign: i64) -> NcSet {
    NcSet::from_piece(HRep::universe(2).with_lt(&[-sign, 0], q(0)))
        .with(HRep::universe(2).with_eq(&[1, 0], q(0)).with_le(&[0, -1], q(-1)))
        .with(HRep::universe(2).with_eq(&[1, 0], q(0)).with_le(&[0, 1], q(-1)))
}

/// `[-1,1] × ℝ` without the open segments `{±1} × (−1, 1)`.
pub fn strip_minus_segments() -> NcSet {
    let mut e = NcSet::from_piece(HRep::universe(2).with_lt(&[1, 0], q(1)).with_lt(&[-1, 0], q(1)));
    for s in [1, -1] {
        e = e
            .with(HRep::universe(2).with_eq(&[1, 0], q(s)).with_le(&[0, -1], q(-1)))
            .with(HRep::universe(2).with_eq(&[1, 0], q(s)).with_le(&[0, 1], q(-1)));
    }
    e
}

/// Piecewise intersection with no qualification check.
pub fn raw_intersection(a: &NcSet, b: &NcSet) -> NcSet {
    let mut out = NcSet::empty(a.dim);
    for p in &a.pieces {
        for r in &b.pieces {
            let i = p.intersect(r);
            if !poly::is_empty(&i) {
                out = out.with(i);
            }
        }
    }
    out.canonicalize()
}

/// A point of `a` outside `b`.
fn outside(a: &NcSet, b: &NcSet) -> Option<QVec> {
    a.pieces.iter().find_map(|p| uncovered_point(p, &b.pieces))
}

fn equal_report(name: String, got: &NcSet, want: &NcSet) -> OracleReport {
    let ok = set_equal(got, want);
    let w = if ok { None } else { outside(got, want).or_else(|| outside(want, got)) };
    OracleReport::exact(name, ok, wit(w))
}

pub fn reproduce(example: Example) -> Result<Reproduction> {
    let tag = example.tag();
    let want = golden(example)?;
    let mut reports = Vec::new();
    let (set, figure) = match example {
        Example::Sec2Sum => {
            let c = strip_with_corners();
            let sum = nc_sum(&c, &c).canonicalize();
            let two_c = nc_scale(&c, &q(2));
            reports.push(OracleReport::exact(format!("{tag}: C nearly convex"), is_nearly_convex(&c).verdict, vec![]));
            reports.push(equal_report(format!("{tag}: C+C equals golden"), &sum, &want));
            let extra = outside(&sum, &two_c);
            reports.push(OracleReport::exact(format!("{tag}: C+C differs from 2C"), extra.is_some(), wit(extra)));
            (sum.clone(), sum)
        }
        Example::Sec2Intersect => {
            let (e1, e2) = (half_plane_minus_segment(1), half_plane_minus_segment(-1));
            for (i, e) in [&e1, &e2].into_iter().enumerate() {
                let ok = is_nearly_convex(e).verdict;
                reports.push(OracleReport::exact(format!("{tag}: E{} nearly convex", i + 1), ok, vec![]));
            }
            let cq = matches!(nc_intersect(&[e1.clone(), e2.clone()]), Err(Error::CqViolated(_)));
            reports.push(OracleReport::exact(format!("{tag}: intersection rule refuses"), cq, vec![]));
            let inter = raw_intersection(&e1, &e2);
            reports.push(equal_report(format!("{tag}: intersection equals golden"), &inter, &want));
            let cert = is_nearly_convex(&inter);
            reports.push(OracleReport::exact(format!("{tag}: intersection not nearly convex"), !cert.verdict, vec![]));
            // a valid witness lies in ri conv E but not in E
            let valid = cert
                .witness
                .as_ref()
                .is_some_and(|w| !inter.contains(w) && poly::rel_interior(&closure(&inter)).contains(w));
            reports.push(OracleReport::exact(format!("{tag}: witness valid"), valid, wit(cert.witness.clone())));
            (inter.clone(), inter)
        }
        Example::StripRecession => {
            let e = strip_minus_segments();
            let rep = rec_classify(&e)?;
            let up = QVec::from_ints(&[0, 1]);
            let rec = NcSet::from_piece(rep.rec_cl.clone());
            reports.push(equal_report(format!("{tag}: rec cl E equals golden"), &rec, &want));
            reports.push(OracleReport::exact(format!("{tag}: (0,1) not in rec E"), !rec_membership(&e, &up), up.to_f64()));
            reports.push(OracleReport::exact(format!("{tag}: unbounded"), !is_bounded(&e)?, vec![]));
            reports.push(OracleReport::exact(format!("{tag}: span condition fails"), !rep.span_condition, vec![]));
            let analog = NcSet::from_piece(HRep::universe(2).with_lt(&[-1, 0], q(0))).with(HRep::point(&QVec::zeros(2)));
            let arep = rec_classify(&analog)?;
            reports.push(OracleReport::exact(format!("{tag}: analog span condition holds"), arep.span_condition, vec![]));
            let inner: Vec<&(QVec, bool)> =
                arep.membership_answers.iter().filter(|(y, _)| arep.inner_bound.contains(y)).collect();
            let bad = inner.iter().find(|(_, ok)| !ok).map(|(y, _)| y.clone());
            reports.push(OracleReport::exact(
                format!("{tag}: analog ri rec members accepted"),
                !inner.is_empty() && bad.is_none(),
                wit(bad),
            ));
            let want_cone = HRep::universe(2).with_le(&[-1, 0], q(0));
            reports.push(OracleReport::exact(
                format!("{tag}: analog rec cl E is the closed half-plane"),
                poly_equal(&arep.rec_cl, &want_cone),
                vec![],
            ));
            (rec, e)
        }
        Example::Rockafellar => {
            let f = ConvexFn::rockafellar(QSqrt2::one())?;
            let dom = f.dom_subdiff()?;
            reports.push(equal_report(format!("{tag}: dom equals golden"), &dom, &want));
            reports.push(OracleReport::exact(format!("{tag}: dom nearly convex"), is_nearly_convex(&dom).verdict, vec![]));
            reports.extend(suite::rockafellar_set_reports(&q(1))?);
            reports.extend(suite::rockafellar_case_reports(&q(1), 41)?);
            (dom.clone(), dom)
        }
        Example::Halfstrip => {
            let f = ConvexFn::halfstrip(QSqrt2::one())?;
            let dom = f.dom_subdiff()?;
            reports.push(equal_report(format!("{tag}: dom equals golden"), &dom, &want));
            reports.push(OracleReport::exact(format!("{tag}: dom nearly convex"), is_nearly_convex(&dom).verdict, vec![]));
            let closed = set_equal(&dom, &NcSet::from_piece(closure(&dom)));
            let open = set_equal(&dom, &NcSet::from_piece(interior_core(&dom)?));
            reports.push(OracleReport::exact(format!("{tag}: dom neither open nor closed"), !closed && !open, vec![]));
            let witness = QVec(vec![q(0), qr(1, 2)]);
            reports.push(OracleReport::exact(
                format!("{tag}: dom convex along its boundary line"),
                !dom.contains(&witness) && dom.contains(&QVec::from_ints(&[0, 1])),
                witness.to_f64(),
            ));
            for a in [q(0), q(1)] {
                reports.extend(suite::halfstrip_reports(&a, 41)?);
            }
            // the assembler recovers α = 0 from the half-plane with its lower ray removed
            let c = HRep::universe(2).with_le(&[-1, 0], q(0));
            let marks = [QVec::zeros(2)];
            let edges = polygon_edges(&c, &marks)?;
            let lower = edges
                .iter()
                .position(|e| matches!(&e.edge, Edge::Ray { dir, .. } if dir[1] < num_traits::Zero::zero()))
                .ok_or_else(|| Error::InvariantViolated("half-plane without a lower ray".into()))?;
            let a = assemble_polygon_fn(&c, &marks, &[lower])?;
            let zero = ConvexFn::halfstrip(QSqrt2::zero())?.dom_subdiff()?;
            reports.push(equal_report(format!("{tag}: assembled half-plane matches alpha = 0"), &a.predicted_dom, &zero));
            reports.push(equal_report(format!("{tag}: assembled function realises its prediction"), &a.f.dom_subdiff()?, &a.predicted_dom));
            (dom.clone(), dom)
        }
        Example::Ncpolygon => {
            let dom = ncpolygon()?.dom_subdiff()?;
            reports.push(equal_report(format!("{tag}: dom equals golden"), &dom, &want));
            let region = ncpolygon_region();
            let all: Vec<usize> = (0..polygon_edges(&region, &[])?.len()).collect();
            let a = assemble_polygon_fn(&region, &[], &all)?;
            reports.push(equal_report(format!("{tag}: assembler prediction equals golden"), &a.predicted_dom, &want));
            reports.push(equal_report(format!("{tag}: assembled function realises its prediction"), &a.f.dom_subdiff()?, &a.predicted_dom));
            reports.push(OracleReport::exact(format!("{tag}: dom nearly convex"), is_nearly_convex(&dom).verdict, vec![]));
            (dom.clone(), dom)
        }
    };
    Ok(Reproduction { reports, set, figure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goldens_parse_with_matching_tags() {
        for e in Example::value_variants() {
            assert_eq!(golden(*e).unwrap().dim, 2);
        }
    }

    #[test]
    fn set_examples_reproduce() {
        for e in [Example::Sec2Sum, Example::Sec2Intersect, Example::StripRecession, Example::Ncpolygon] {
            for r in reproduce(e).unwrap().reports {
                assert!(r.passed, "{}", r.to_json_line());
            }
        }
    }
}
