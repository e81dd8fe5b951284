//! Planar convex polygons in floating point: enough to compare two
//! subdifferential values on a bounded window.

use crate::subdiff::SubVal;

type P = [f64; 2];

fn cross(o: P, a: P, b: P) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull; collinear points dropped.
pub fn convex_hull(mut pts: Vec<P>) -> Vec<P> {
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<P> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Clip a convex hull (as returned by [`convex_hull`]) to `[-w, w]²`.
fn clip(poly: Vec<P>, w: f64) -> Vec<P> {
    // each half-plane as (axis, sign): sign * x[axis] <= w
    let mut cur = poly;
    for (axis, sign) in [(0, 1.0), (0, -1.0), (1, 1.0), (1, -1.0)] {
        if cur.is_empty() {
            break;
        }
        let inside = |p: &P| sign * p[axis] <= w;
        let cut = |a: P, b: P| {
            let t = (w - sign * a[axis]) / (sign * (b[axis] - a[axis]));
            [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
        };
        let n = cur.len();
        let mut out = Vec::new();
        if n == 1 {
            if inside(&cur[0]) {
                out.push(cur[0]);
            }
        } else {
            let edges = if n == 2 { 1 } else { n };
            for i in 0..edges {
                let (a, b) = (cur[i], cur[(i + 1) % n]);
                match (inside(&a), inside(&b)) {
                    (true, true) => out.push(a),
                    (true, false) => {
                        out.push(a);
                        out.push(cut(a, b));
                    }
                    (false, true) => out.push(cut(a, b)),
                    (false, false) => {}
                }
                if n == 2 && inside(&b) {
                    out.push(b);
                }
            }
        }
        out.dedup();
        cur = out;
    }
    cur
}

fn seg_dist(p: P, a: P, b: P) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0) };
    let q = [a[0] + t * d[0], a[1] + t * d[1]];
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

fn dist_to(p: P, poly: &[P]) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => seg_dist(p, poly[0], poly[0]),
        2 => seg_dist(p, poly[0], poly[1]),
        n => {
            let inside = (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= -1e-15);
            if inside {
                return 0.0;
            }
            (0..n).map(|i| seg_dist(p, poly[i], poly[(i + 1) % n])).fold(f64::INFINITY, f64::min)
        }
    }
}

fn planar(v: &[f64]) -> P {
    [v[0], v.get(1).copied().unwrap_or(0.0)]
}

/// `(conv points + cone rays) ∩ [-w, w]²` as a convex polygon. Rays are
/// truncated far beyond the window before clipping.
pub fn window_polygon(s: &SubVal, w: f64) -> Vec<P> {
    let reach = s.points.iter().flatten().fold(w, |m, c| m.max(c.abs())) * 100.0;
    let mut pts: Vec<P> = s.points.iter().map(|p| planar(p)).collect();
    for p in &s.points {
        for r in &s.rays {
            let (p, r) = (planar(p), planar(r));
            let norm = (r[0] * r[0] + r[1] * r[1]).sqrt();
            if norm > 0.0 {
                pts.push([p[0] + reach * r[0] / norm, p[1] + reach * r[1] / norm]);
            }
        }
    }
    // pairs of rays reach the far corners of the cone as well
    for p in &s.points {
        for (i, r1) in s.rays.iter().enumerate() {
            for r2 in &s.rays[i + 1..] {
                let (p, a, b) = (planar(p), planar(r1), planar(r2));
                let na = (a[0] * a[0] + a[1] * a[1]).sqrt().max(f64::MIN_POSITIVE);
                let nb = (b[0] * b[0] + b[1] * b[1]).sqrt().max(f64::MIN_POSITIVE);
                pts.push([p[0] + reach * (a[0] / na + b[0] / nb), p[1] + reach * (a[1] / na + b[1] / nb)]);
            }
        }
    }
    clip(convex_hull(pts), w)
}

/// Hausdorff distance of two values restricted to `[-w, w]²` (one-dimensional
/// values are embedded on the first axis). Both empty gives 0; one empty gives `∞`.
pub fn hausdorff_window(a: &SubVal, b: &SubVal, w: f64) -> f64 {
    let pa = window_polygon(a, w);
    let pb = window_polygon(b, w);
    match (pa.is_empty(), pb.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    let one = pa.iter().map(|&p| dist_to(p, &pb)).fold(0.0, f64::max);
    let two = pb.iter().map(|&p| dist_to(p, &pa)).fold(0.0, f64::max);
    one.max(two)
}
