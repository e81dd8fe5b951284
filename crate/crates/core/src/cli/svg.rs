//! Deterministic SVG figures of planar sets.
//!
//! Two-dimensional pieces are shaded, with strict facets dashed and closed
//! facets solid. Lower-dimensional pieces are drawn on top: segments and rays
//! solid, points as filled dots. Vertices of the shaded pieces are dots when
//! they belong to the set and rings when they do not.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ncset::NcSet;
use crate::num::{q, QVec, Q};
use crate::poly::{hrep_to_vrep, HRep, Row};

/// Viewport and output size of a figure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureSpec {
    pub lo: QVec,
    pub hi: QVec,
    /// Width of the drawing area in pixels; the height follows the aspect ratio.
    pub width: u32,
}

impl FigureSpec {
    pub fn new(lo: QVec, hi: QVec) -> Self {
        FigureSpec { lo, hi, width: 480 }
    }

    /// The box spanned by every vertex of every piece closure, padded by one
    /// unit (two when something is unbounded).
    pub fn fit(e: &NcSet) -> Self {
        let mut lo: Option<QVec> = None;
        let mut hi: Option<QVec> = None;
        let mut unbounded = false;
        for p in &e.pieces {
            let v = hrep_to_vrep(&p.closure());
            unbounded |= !v.rays.is_empty() || !v.lines.is_empty();
            for x in &v.points {
                lo = Some(match lo {
                    None => x.clone(),
                    Some(l) => QVec(l.iter().zip(x.iter()).map(|(a, b)| a.min(b).clone()).collect()),
                });
                hi = Some(match hi {
                    None => x.clone(),
                    Some(h) => QVec(h.iter().zip(x.iter()).map(|(a, b)| a.max(b).clone()).collect()),
                });
            }
        }
        let pad = q(if unbounded { 2 } else { 1 });
        let lo = lo.unwrap_or_else(|| QVec::zeros(2));
        let hi = hi.unwrap_or_else(|| QVec::zeros(2));
        FigureSpec::new(
            QVec(lo.iter().map(|c| c - &pad).collect()),
            QVec(hi.iter().map(|c| c + &pad).collect()),
        )
    }

    fn window(&self) -> HRep {
        HRep::boxed(&self.lo, &self.hi, false)
    }

    fn scale(&self) -> f64 {
        let w = (&self.hi.0[0] - &self.lo.0[0]).to_f64().unwrap_or(1.0);
        self.width as f64 / w.max(f64::MIN_POSITIVE)
    }

    fn height(&self) -> f64 {
        (&self.hi.0[1] - &self.lo.0[1]).to_f64().unwrap_or(1.0) * self.scale()
    }

    fn px(&self, x: &QVec) -> (f64, f64) {
        let s = self.scale();
        let dx = (&x.0[0] - &self.lo.0[0]).to_f64().unwrap_or(0.0);
        let dy = (&self.hi.0[1] - &x.0[1]).to_f64().unwrap_or(0.0);
        (MARGIN + dx * s, MARGIN + dy * s)
    }
}

const MARGIN: f64 = 16.0;
const FILL: &str = "#9ecae1";
const STROKE: &str = "#08519c";
const DOT_RADIUS: f64 = 3.0;

/// Distinct points ordered along `dir`; the two extremes of a clipped face.
fn extremes(points: &[QVec], dir: &QVec) -> Option<(QVec, QVec)> {
    let lo = points.iter().min_by(|a, b| a.dot(dir).cmp(&b.dot(dir)))?;
    let hi = points.iter().max_by(|a, b| a.dot(dir).cmp(&b.dot(dir)))?;
    (lo != hi).then(|| (lo.clone(), hi.clone()))
}

/// Counter-clockwise order around the vertex centroid, computed exactly by
/// half-plane and cross-product comparisons.
fn ccw(mut pts: Vec<QVec>) -> Vec<QVec> {
    let n = Q::from_integer(pts.len().into());
    let c = QVec(
        (0..2).map(|i| pts.iter().fold(Q::zero(), |s, p| s + &p.0[i]) / &n).collect(),
    );
    let half = |d: &QVec| d.0[1] < Q::zero() || (d.0[1].is_zero() && d.0[0] < Q::zero());
    pts.sort_by(|a, b| {
        let (da, db) = (a.sub(&c), b.sub(&c));
        half(&da).cmp(&half(&db)).then_with(|| {
            let cross = &da.0[0] * &db.0[1] - &da.0[1] * &db.0[0];
            Q::zero().cmp(&cross)
        })
    });
    pts
}

fn f(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn with_eq(h: &HRep, r: &Row) -> HRep {
    let mut out = h.clone();
    out.eq.push(r.clone());
    out
}

/// SVG 1.1 text for a planar set. Identical inputs give identical bytes.
pub fn render_svg(e: &NcSet, spec: &FigureSpec) -> Result<String> {
    if e.dim != 2 || spec.lo.dim() != 2 || spec.hi.dim() != 2 {
        return Err(Error::Not2d);
    }
    let window = spec.window();
    let (w, h) = (spec.width as f64 + 2.0 * MARGIN, spec.height() + 2.0 * MARGIN);
    let mut fills = String::new();
    let mut edges = String::new();
    let mut lines = String::new();
    // each vertex once; membership decides filled or ring
    let mut marks: BTreeMap<QVec, bool> = BTreeMap::new();
    let mut dot = |x: &QVec, filled: bool| {
        *marks.entry(x.clone()).or_insert(false) |= filled;
    };
    let ring = |out: &mut String, x: &QVec, filled: bool| {
        let (cx, cy) = spec.px(x);
        let fill = if filled { STROKE } else { "white" };
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="{}" fill="{fill}" stroke="{STROKE}" stroke-width="1.5"/>"#,
            f(cx),
            f(cy),
            f(DOT_RADIUS)
        );
    };
    let segment = |out: &mut String, a: &QVec, b: &QVec, dashed: bool| {
        let ((x1, y1), (x2, y2)) = (spec.px(a), spec.px(b));
        let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{STROKE}" stroke-width="2"{dash}/>"#,
            f(x1),
            f(y1),
            f(x2),
            f(y2)
        );
    };
    for p in &e.canonicalize().pieces {
        let cl = p.closure();
        let full = hrep_to_vrep(&cl);
        let clipped = hrep_to_vrep(&cl.intersect(&window));
        if clipped.points.is_empty() {
            continue;
        }
        match full.affine_dim() {
            0 => dot(&full.points[0], true),
            1 => {
                let dir = full.rays.first().or(full.lines.first()).cloned().unwrap_or_else(|| full.points[1].sub(&full.points[0]));
                if let Some((a, b)) = extremes(&clipped.points, &dir) {
                    segment(&mut lines, &a, &b, false);
                }
                for v in &full.points {
                    if window.contains(v) && !e.contains(v) {
                        dot(v, false);
                    }
                }
            }
            _ => {
                let poly = ccw(clipped.points.clone());
                let pts: Vec<String> = poly
                    .iter()
                    .map(|x| {
                        let (a, b) = spec.px(x);
                        format!("{},{}", f(a), f(b))
                    })
                    .collect();
                let _ = writeln!(fills, r#"  <polygon points="{}" fill="{FILL}" stroke="none"/>"#, pts.join(" "));
                for (rows, dashed) in [(&p.le, false), (&p.lt, true)] {
                    for r in rows {
                        let face = hrep_to_vrep(&with_eq(&cl.intersect(&window), r));
                        let dir = QVec(vec![-r.a.0[1].clone(), r.a.0[0].clone()]);
                        if let Some((a, b)) = extremes(&face.points, &dir) {
                            segment(&mut edges, &a, &b, dashed);
                        }
                    }
                }
                for v in &full.points {
                    if window.contains(v) {
                        dot(v, e.contains(v));
                    }
                }
            }
        }
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f(w),
        f(h),
        f(w),
        f(h)
    );
    let _ = writeln!(out, r#"  <rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, f(w), f(h));
    out.push_str(&fills);
    out.push_str(&edges);
    out.push_str(&lines);
    let mut dots = String::new();
    for (x, filled) in &marks {
        ring(&mut dots, x, *filled);
    }
    out.push_str(&dots);
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip_with_corners() -> NcSet {
        let strip = HRep::universe(2).with_lt(&[1, 0], q(1)).with_lt(&[-1, 0], q(1)).with_lt(&[0, -1], q(0));
        NcSet::from_piece(strip).with(HRep::point(&QVec::from_ints(&[-1, 0]))).with(HRep::point(&QVec::from_ints(&[1, 0])))
    }

    #[test]
    fn strip_has_dashed_edges_and_two_dots() {
        let e = strip_with_corners();
        let svg = render_svg(&e, &FigureSpec::fit(&e)).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("stroke-dasharray").count(), 3);
        assert_eq!(svg.matches(r##"fill="#08519c""##).count(), 2);
        assert!(!svg.contains(r#"fill="white" stroke"#));
    }

    #[test]
    fn square_is_solid() {
        let sq = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), false));
        let svg = render_svg(&sq, &FigureSpec::fit(&sq)).unwrap();
        assert_eq!(svg.matches("<line").count(), 4);
        assert!(!svg.contains("dasharray"));
        assert_eq!(svg.matches("<circle").count(), 4);
    }

    #[test]
    fn output_is_deterministic() {
        let e = strip_with_corners();
        let spec = FigureSpec::fit(&e);
        assert_eq!(render_svg(&e, &spec).unwrap(), render_svg(&e, &spec).unwrap());
    }

    #[test]
    fn only_planar_sets() {
        let line = NcSet::from_piece(HRep::universe(1));
        let spec = FigureSpec::new(QVec::from_ints(&[-1, -1]), QVec::from_ints(&[1, 1]));
        assert!(matches!(render_svg(&line, &spec), Err(Error::Not2d)));
    }
}
