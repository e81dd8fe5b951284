//! Independent numerical checks of the closed forms: brute-force conjugates,
//! subgradient and monotonicity inequalities, finite differences, and the
//! reconstruction of `∂f(x)` from nearby gradients.

mod geom;
pub mod suite;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncset::closure;
use crate::num::{QSqrt2, QVec};
use crate::subdiff::{ConvexFn, MonotoneGraphSample, SubVal};

pub use geom::{convex_hull, hausdorff_window, window_polygon};

/// Tolerance for inequalities that hold exactly in real arithmetic.
pub const TOL_EXACT: f64 = 1e-9;
/// Tolerance for grid-converged values.
pub const TOL_GRID: f64 = 1e-5;
/// Tolerance for reconstructed subdifferentials.
pub const TOL_STRUCT: f64 = 1e-3;

/// A box sampled with `steps` points per axis; [`conj_oracle`] rescans each
/// line-search bracket `refine` times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub steps: usize,
    pub refine: usize,
}

impl Grid {
    pub fn cube(dim: usize, lo: f64, hi: f64, steps: usize) -> Self {
        Grid { lo: vec![lo; dim], hi: vec![hi; dim], steps: steps.max(2), refine: 3 }
    }

    pub fn boxed(lo: Vec<f64>, hi: Vec<f64>, steps: usize) -> Self {
        Grid { lo, hi, steps: steps.max(2), refine: 3 }
    }

    pub fn with_refine(mut self, refine: usize) -> Self {
        self.refine = refine;
        self
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// All probe points, last axis fastest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let m = self.steps;
        let total = m.pow(n as u32);
        let coord = |i: usize, k: usize| self.lo[i] + (self.hi[i] - self.lo[i]) * k as f64 / (m - 1) as f64;
        (0..total)
            .map(|mut idx| {
                let mut p = vec![0.0; n];
                for i in (0..n).rev() {
                    p[i] = coord(i, idx % m);
                    idx /= m;
                }
                p
            })
            .collect()
    }

    fn around(center: &[f64], half: &[f64], steps: usize) -> Grid {
        Grid {
            lo: center.iter().zip(half).map(|(c, h)| c - h).collect(),
            hi: center.iter().zip(half).map(|(c, h)| c + h).collect(),
            steps,
            refine: 0,
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub max_violation: f64,
    pub witness: Vec<f64>,
    pub passed: bool,
    pub samples_used: usize,
    pub tolerance: f64,
}

impl OracleReport {
    /// A yes/no check: violation 0 when `ok`, 1 otherwise, tolerance 0.
    pub fn exact(name: impl Into<String>, ok: bool, witness: Vec<f64>) -> Self {
        let mut r = OracleReport::new("", if ok { 0.0 } else { 1.0 }, witness, 1, 0.0);
        r.name = name.into();
        r
    }

    /// Re-judge the report against another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.max_violation <= tolerance;
        self
    }

    fn new(name: &str, max_violation: f64, witness: Vec<f64>, samples_used: usize, tolerance: f64) -> Self {
        OracleReport {
            name: name.to_string(),
            max_violation,
            witness,
            passed: max_violation <= tolerance,
            samples_used,
            tolerance,
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn objective(f: &ConvexFn, xs: &[f64], x: &[f64]) -> f64 {
    let v = f.eval(x);
    if v.is_finite() {
        dot(xs, x) - v
    } else {
        f64::NEG_INFINITY
    }
}

fn scan(f: &ConvexFn, xs: &[f64], g: &Grid, best: &mut (f64, Vec<f64>)) -> f64 {
    let mut top = f64::NEG_INFINITY;
    for p in g.points() {
        let v = objective(f, xs, &p);
        if v > top {
            top = v;
        }
        if v > best.0 {
            *best = (v, p);
        }
    }
    top
}

const MAX_GROWTH: usize = 40;
/// Points per bracket rescan in [`line_max`].
const RESCAN_STEPS: usize = 11;

/// Maximum of a concave (possibly `−∞`-valued) function of one variable on
/// `[a, b]`. A concave function peaks between the neighbours of its sampled
/// maximum, so a scan gives a bracket that is then rescanned `rescans` times
/// and closed by golden-section steps. Kinks and `−∞` outside the domain are
/// harmless since only comparisons with a finite incumbent are made.
fn line_max(g: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, steps: usize, rescans: usize) -> (f64, f64) {
    let mut best = (f64::NEG_INFINITY, a);
    let (mut lo, mut hi) = (a, b);
    for pass in 0..=rescans {
        let m = if pass == 0 { steps.max(3) } else { RESCAN_STEPS };
        let at = |k: usize| lo + (hi - lo) * k as f64 / (m - 1) as f64;
        let mut arg = None;
        for k in 0..m {
            let v = g(at(k));
            if v > best.0 || (arg.is_none() && v == best.0 && v.is_finite()) {
                best = (v, at(k));
                arg = Some(k);
            }
        }
        let Some(k) = arg else {
            if !best.0.is_finite() {
                return best;
            }
            break;
        };
        let (l, h) = (at(k.saturating_sub(1)), at((k + 1).min(m - 1)));
        lo = l;
        hi = h;
    }
    // golden section on [lo, hi] around the incumbent
    let tol = 1e-13 * (1.0 + best.1.abs()) + 1e-300;
    let phi = 0.381_966_011_250_105_1;
    let c = best.1.clamp(lo, hi);
    let (mut lo, mut hi, mut c) = (lo, hi, c);
    let mut fc = best.0;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let right = hi - c >= c - lo;
        let x = if right { c + phi * (hi - c) } else { c - phi * (c - lo) };
        if x == c {
            break;
        }
        let v = g(x);
        if v > fc {
            if right {
                lo = c;
            } else {
                hi = c;
            }
            c = x;
            fc = v;
        } else if right {
            hi = x;
        } else {
            lo = x;
        }
    }
    if fc > best.0 {
        best = (fc, c);
    }
    best
}

/// `sup` of the objective over the box `center ± half`, one axis at a time:
/// partial maxima of a concave function are concave, so every level is a
/// [`line_max`].
fn nested_max(f: &ConvexFn, xs: &[f64], x: &mut Vec<f64>, axis: usize, center: &[f64], half: &[f64], grid: &Grid) -> f64 {
    let n = x.len();
    let mut g = |t: f64| {
        let mut y = x.clone();
        y[axis] = t;
        if axis + 1 == n {
            objective(f, xs, &y)
        } else {
            nested_max(f, xs, &mut y, axis + 1, center, half, grid)
        }
    };
    let (v, t) = line_max(&mut g, center[axis] - half[axis], center[axis] + half[axis], grid.steps, grid.refine);
    x[axis] = t;
    v
}

/// `sup_x ⟨x*, x⟩ − f(x)` by grid search.
///
/// The box of `grid` is doubled about its center until the box maxima settle;
/// if they keep rising at a steady positive rate the supremum is reported as
/// `+∞`. The value is then refined by a nested line search over the last box,
/// which is exact up to rounding for concave objectives even along kinked
/// ridges where plain grid zooming stalls.
pub fn conj_oracle(f: &ConvexFn, xs: &[f64], grid: &Grid) -> f64 {
    let center: Vec<f64> = grid.lo.iter().zip(&grid.hi).map(|(a, b)| (a + b) / 2.0).collect();
    let half0: Vec<f64> = grid.lo.iter().zip(&grid.hi).map(|(a, b)| (b - a) / 2.0).collect();
    let mut best = (f64::NEG_INFINITY, center.clone());
    let mut tops: Vec<(f64, f64)> = Vec::new();
    let mut half = half0.clone();
    let mut settled = 0;
    for k in 0..MAX_GROWTH {
        let scale = (1u64 << k) as f64;
        half = half0.iter().map(|h| h * scale).collect();
        let top = scan(f, xs, &Grid::around(&center, &half, grid.steps), &mut best);
        tops.push((scale, top));
        let n = tops.len();
        if n >= 4 {
            let rate = |i: usize| (tops[i].1 - tops[i - 1].1) / (tops[i].0 - tops[i - 1].0);
            let (r1, r2, r3) = (rate(n - 3), rate(n - 2), rate(n - 1));
            if r1.is_finite() && r3 > 1e-4 && r3 >= 0.9 * r2 && r2 >= 0.9 * r1 {
                return f64::INFINITY;
            }
        }
        if n >= 2 && tops[n - 1].1.is_finite() && tops[n - 1].1 - tops[n - 2].1 <= 1e-12 * (1.0 + tops[n - 1].1.abs())
        {
            settled += 1;
            if settled >= 2 {
                break;
            }
        } else {
            settled = 0;
        }
    }
    if !best.0.is_finite() {
        return best.0;
    }
    let mut x = center.clone();
    let v = nested_max(f, xs, &mut x, 0, &center, &half, grid);
    if v > best.0 {
        best = (v, x);
    }
    best.0
}

/// Largest violation of `f(y) ≥ f(x) + ⟨u, y − x⟩` over the grid and a ring of
/// nearby points.
pub fn subgrad_check(f: &ConvexFn, x: &[f64], u: &[f64], grid: &Grid) -> Result<OracleReport> {
    let fx = f.eval(x);
    if !fx.is_finite() {
        return Err(Error::InfiniteAtX);
    }
    let mut ys = grid.points();
    let n = x.len();
    for s in [1e-6, 1e-4, 1e-2, 1e-1, 1.0] {
        for i in 0..n {
            for sign in [-1.0, 1.0] {
                let mut y = x.to_vec();
                y[i] += sign * s;
                ys.push(y);
            }
        }
        if n == 2 {
            for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                ys.push(vec![x[0] + a * s, x[1] + b * s]);
            }
        }
    }
    ys.push(x.to_vec());
    let mut worst = (f64::NEG_INFINITY, x.to_vec());
    for y in &ys {
        let fy = f.eval(y);
        if !fy.is_finite() {
            continue;
        }
        let d: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        let v = dot(u, &d) + fx - fy;
        if v > worst.0 {
            worst = (v, y.clone());
        }
    }
    Ok(OracleReport::new("subgrad_check", worst.0, worst.1, ys.len(), TOL_EXACT))
}

/// Every element in the probe set of `∂f(x)` checked with [`subgrad_check`].
pub fn subdiff_check(f: &ConvexFn, x: &[QSqrt2], grid: &Grid) -> Result<OracleReport> {
    let xf: Vec<f64> = x.iter().map(QSqrt2::to_f64).collect();
    let v = f.subdiff_q(x);
    let mut out = OracleReport::new("subdiff_check", f64::NEG_INFINITY, xf.clone(), 0, TOL_EXACT);
    for u in v.probes() {
        let r = subgrad_check(f, &xf, &u, grid)?;
        out.samples_used += r.samples_used;
        if r.max_violation > out.max_violation {
            out.max_violation = r.max_violation;
            out.witness = r.witness;
        }
    }
    out.passed = out.max_violation <= out.tolerance;
    Ok(out)
}

/// Smallest `⟨x − y, u − v⟩` over all pairs.
pub fn monotone_check(sample: &MonotoneGraphSample) -> Result<OracleReport> {
    if sample.pairs.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut worst = (f64::INFINITY, Vec::new());
    for (i, (x, u)) in sample.pairs.iter().enumerate() {
        for (y, v) in &sample.pairs[i..] {
            let dx: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
            let du: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
            let m = dot(&dx, &du);
            if m < worst.0 {
                let mut w = x.clone();
                w.extend(y.iter().copied());
                worst = (m, w);
            }
        }
    }
    let n = sample.pairs.len();
    Ok(OracleReport::new("monotone_check", -worst.0, worst.1, n * (n + 1) / 2, TOL_EXACT))
}

fn central(f: &ConvexFn, x: &[f64], h: f64) -> Result<Vec<f64>> {
    let mut g = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let mut p = x.to_vec();
        let mut m = x.to_vec();
        p[i] += h;
        m[i] -= h;
        let (fp, fm) = (f.eval(&p), f.eval(&m));
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::NotInterior);
        }
        g.push((fp - fm) / (2.0 * h));
    }
    Ok(g)
}

/// Central differences with one Richardson step.
pub fn fd_gradient(f: &ConvexFn, x: &[f64], h: f64) -> Result<Vec<f64>> {
    let d1 = central(f, x, h)?;
    let d2 = central(f, x, h / 2.0)?;
    Ok(d1.iter().zip(&d2).map(|(a, b)| (4.0 * b - a) / 3.0).collect())
}

/// As [`fd_gradient`], but `None` where the two step sizes disagree, which
/// happens when a kink lies within reach of the stencil.
fn smooth_gradient(f: &ConvexFn, x: &[f64], h: f64) -> Option<Vec<f64>> {
    let d1 = central(f, x, h).ok()?;
    let d2 = central(f, x, h / 2.0).ok()?;
    let d4 = central(f, x, h / 4.0).ok()?;
    let agree = d1.iter().zip(&d2).zip(&d4).all(|((a, b), c)| (a - b).abs() <= 1e-6 * (1.0 + a.abs()) && (b - c).abs() <= 1e-6 * (1.0 + b.abs()));
    agree.then(|| d2.iter().zip(&d4).map(|(a, b)| (4.0 * b - a) / 3.0).collect())
}

/// `cl conv S(x) + K(x)`: gradients at differentiable probes on a circle of
/// the given radius about `x`, plus the normal cone of `cl dom ∂f` at `x`.
pub fn structure_reconstruct(f: &ConvexFn, x: &QVec, radius: f64, samples: usize) -> Result<SubVal> {
    if f.subdiff(x).is_empty() {
        return Err(Error::NotInDom);
    }
    let n = x.dim();
    if n > 2 {
        return Err(Error::Not2d);
    }
    let xf = x.to_f64();
    let h = radius * 1e-3;
    let mut grads: Vec<Vec<f64>> = Vec::new();
    for k in 0..samples {
        let probe: Vec<f64> = if n == 1 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            vec![xf[0] + sign * radius]
        } else {
            let phi = std::f64::consts::TAU * (k as f64 + 0.5) / samples as f64;
            vec![xf[0] + radius * phi.cos(), xf[1] + radius * phi.sin()]
        };
        if let Some(g) = smooth_gradient(f, &probe, h) {
            grads.push(g);
        }
    }
    let cl = closure(&f.dom_subdiff()?);
    let mut rays = Vec::new();
    for r in &cl.eq {
        rays.push(r.a.to_f64());
        rays.push(r.a.neg().to_f64());
    }
    rays.extend(cl.le.iter().filter(|r| r.eval(x).is_zero()).map(|r| r.a.to_f64()));
    Ok(SubVal { points: grads, rays })
}

/// [`structure_reconstruct`] compared with `∂f(x)` on `[-1, 1]²`.
pub fn structure_check(f: &ConvexFn, x: &QVec) -> Result<OracleReport> {
    let approx = structure_reconstruct(f, x, 1e-4, 360)?;
    let exact = f.subdiff(x);
    // a hair past the unit window keeps values on its edge, such as (0, 1)
    let d = hausdorff_window(&approx, &exact, 1.0 + 1e-6);
    Ok(OracleReport::new("structure_check", d, x.to_f64(), approx.points.len(), TOL_STRUCT))
}
