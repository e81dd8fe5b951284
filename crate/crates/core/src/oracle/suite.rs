//! Probe sets and check batteries for the Rockafellar family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{conj_oracle, monotone_check, structure_check, subdiff_check, Grid, OracleReport, TOL_GRID};
use crate::error::Result;
use crate::ncset::set_equal;
use crate::num::{q, qr, QSqrt2, QVec, Q};
use crate::poly::{poly_equal, vrep_to_hrep, VRep};
use crate::poly::HRep;
use crate::subdiff::{
    halfstrip_dom, ncpolygon, precompose, project_finite, rockafellar_dom, rockafellar_range, rotation_45, sum_fn, ConvexFn,
    Interval, MonotoneGraphSample,
};

/// A rational probe for one row of the subdifferential case table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasePoint {
    /// Row of the table, `1..=13`.
    pub case: usize,
    pub x: QVec,
}

pub const CASE_LABELS: [&str; 13] = [
    "xi1 < 0",
    "xi1 = 0, |xi2| < alpha",
    "xi1 = 0, xi2 >= alpha",
    "xi1 = 0, xi2 <= -alpha",
    "xi2 = alpha - sqrt(xi1), 0 < xi1 < alpha^2",
    "-xi2 = alpha - sqrt(xi1), 0 < xi1 < alpha^2",
    "0 < xi1 < alpha^2, alpha - sqrt(xi1) > |xi2|",
    "0 < xi1 < alpha^2, xi2 > alpha - sqrt(xi1)",
    "0 < xi1 < alpha^2, -xi2 > alpha - sqrt(xi1)",
    "xi1 = alpha^2, xi2 = 0",
    "xi1 > alpha^2, xi2 = 0",
    "xi1 > alpha^2, xi2 > 0",
    "xi1 > alpha^2, xi2 < 0",
];

/// Whether the case has an empty subdifferential.
pub fn case_is_empty(case: usize) -> bool {
    case <= 2
}

/// Three rational probes per row (one for the single-point row 10). Rows on the
/// kink curve use `ξ₁ = (rα)²` so that `√ξ₁ = rα` stays rational; with
/// `r ∈ {1/2, 2/3, 4/5}` the slopes `−1/(2rα)` are dyadic for `α ∈ {1/2, 1, 2}`,
/// and `ξ₁` stays far enough from 0 for gradients at radius `1e-4` to be
/// within `1e-3` of their limits.
pub fn rockafellar_case_points(alpha: &Q) -> Vec<CasePoint> {
    let a = alpha.clone();
    let a2 = &a * &a;
    let pt = |x: Q, y: Q| QVec(vec![x, y]);
    let rs = [qr(1, 2), qr(2, 3), qr(4, 5)];
    let mut out = Vec::new();
    let mut push = |case, x| out.push(CasePoint { case, x });
    for (x, y) in [(q(-1), q(0)), (qr(-1, 2), q(1)), (q(-3), q(-2))] {
        push(1, pt(x, y));
    }
    for y in [q(0), &a / q(2), -(&a / q(2))] {
        push(2, pt(q(0), y));
    }
    for y in [a.clone(), &a * q(2), &a + q(1)] {
        push(3, pt(q(0), y.clone()));
        push(4, pt(q(0), -y));
    }
    for r in &rs {
        let xi1 = (r * &a) * (r * &a);
        let gap = (q(1) - r) * &a;
        push(5, pt(xi1.clone(), gap.clone()));
        push(6, pt(xi1.clone(), -gap.clone()));
        push(7, pt(xi1.clone(), &gap / q(2)));
        push(8, pt(xi1.clone(), &gap + qr(1, 4)));
        push(9, pt(xi1, -(&gap + qr(1, 4))));
    }
    push(10, pt(a2.clone(), q(0)));
    for k in [q(1), q(3), q(8)] {
        let xi1 = &a2 + &k;
        push(11, pt(xi1.clone(), q(0)));
        push(12, pt(xi1.clone(), k.clone() / q(4)));
        push(13, pt(xi1, -(k / q(2))));
    }
    out.sort_by_key(|c| c.case);
    out
}

fn rock(alpha: &Q) -> Result<ConvexFn> {
    ConvexFn::rockafellar(QSqrt2::rational(alpha.clone()))
}

fn exact_point(v: &[f64]) -> QVec {
    QVec(v.iter().map(|c| Q::from_float(*c).expect("finite generator")).collect())
}

/// Default grid for subgradient checks around the table: covers both kinks and
/// the region beyond `α²`.
pub fn case_grid(alpha: f64, steps: usize) -> Grid {
    let top = 2.0 * alpha * alpha + 2.0;
    Grid::boxed(vec![-2.0, -top], vec![top, top], steps)
}

/// Emptiness on rows 1–2 and `subdiff_check` on every other probe.
pub fn rockafellar_case_reports(alpha: &Q, steps: usize) -> Result<Vec<OracleReport>> {
    let f = rock(alpha)?;
    let grid = case_grid(num_traits::ToPrimitive::to_f64(alpha).unwrap_or(1.0), steps);
    let mut out = Vec::new();
    for c in rockafellar_case_points(alpha) {
        let x: Vec<QSqrt2> = c.x.iter().map(QSqrt2::from).collect();
        let name = format!("rockafellar alpha={alpha} case {} at {}", c.case, c.x);
        let r = if case_is_empty(c.case) {
            let empty = f.subdiff_q(&x).is_empty();
            OracleReport::new(&name, if empty { 0.0 } else { 1.0 }, c.x.to_f64(), 1, 0.0)
        } else {
            subdiff_check(&f, &x, &grid)?.renamed(name)
        };
        out.push(r);
    }
    Ok(out)
}

/// `dom ∂f` against the closed-form union and `ran ∂f` against the closed
/// box-like set, both exactly. The range is the closed hull of the generators
/// collected at every case probe, which are dyadic and hence exact.
pub fn rockafellar_set_reports(alpha: &Q) -> Result<Vec<OracleReport>> {
    let f = rock(alpha)?;
    let dom = f.dom_subdiff()?;
    let want = rockafellar_dom(&QSqrt2::rational(alpha.clone())).rationalize()?;
    let dom_ok = set_equal(&dom, &want);
    let mut gens = VRep::empty(2);
    for c in rockafellar_case_points(alpha) {
        let v = f.subdiff(&c.x);
        gens.points.extend(v.points.iter().map(|p| exact_point(p)));
        gens.rays.extend(v.rays.iter().map(|r| exact_point(r)));
    }
    let range_ok = poly_equal(&vrep_to_hrep(&gens), &rockafellar_range());
    let flag = |ok: bool| if ok { 0.0 } else { 1.0 };
    Ok(vec![
        OracleReport::new(&format!("rockafellar alpha={alpha} dom"), flag(dom_ok), vec![], 1, 0.0),
        OracleReport::new(&format!("rockafellar alpha={alpha} range"), flag(range_ok), vec![], gens.points.len(), 0.0),
    ])
}

/// Dual points inside the closed range (with the zero-value boundary rows
/// represented) and points outside it with a margin.
pub fn conjugate_samples(n_in: usize, n_out: usize, seed: u64) -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inside = vec![[0.0, 0.0], [0.0, 0.5], [-1.0, 1.0], [-0.5, -1.0], [-0.25, 0.0], [-2.0, 0.5]];
    while inside.len() < n_in {
        inside.push([rng.gen_range(-3.0..-0.02), rng.gen_range(-1.0..=1.0)]);
    }
    inside.truncate(n_in);
    let mut outside = Vec::with_capacity(n_out);
    while outside.len() < n_out {
        let p = match outside.len() % 3 {
            0 => [rng.gen_range(0.05..2.0), rng.gen_range(-1.0..1.0)],
            1 => [rng.gen_range(-3.0..0.0), rng.gen_range(1.05..3.0)],
            _ => [rng.gen_range(-3.0..0.0), -rng.gen_range(1.05..3.0)],
        };
        outside.push(p);
    }
    (inside, outside)
}

/// Closed-form conjugate against [`conj_oracle`] inside the range, and a
/// certified `+∞` outside.
pub fn rockafellar_conjugate_reports(alpha: &Q, n_in: usize, n_out: usize, seed: u64, steps: usize) -> Result<Vec<OracleReport>> {
    let f = rock(alpha)?;
    let af = num_traits::ToPrimitive::to_f64(alpha).unwrap_or(1.0);
    let top = 2.0 * af * af + 2.0;
    let grid = Grid::boxed(vec![-2.0, -2.0], vec![top, top], steps);
    let (inside, outside) = conjugate_samples(n_in, n_out, seed);
    let mut worst = (0.0f64, vec![]);
    for p in &inside {
        let closed = f.conjugate(p)?;
        let grid_val = conj_oracle(&f, p, &grid);
        let err = (closed - grid_val).abs();
        if !(err <= worst.0) {
            worst = (if err.is_nan() { f64::INFINITY } else { err }, p.to_vec());
        }
    }
    let mut missed = (0.0, vec![]);
    for p in &outside {
        if conj_oracle(&f, p, &grid) != f64::INFINITY || f.conjugate(p)? != f64::INFINITY {
            missed = (1.0, p.to_vec());
        }
    }
    Ok(vec![
        OracleReport::new(&format!("conjugate alpha={alpha} inside"), worst.0, worst.1, inside.len(), TOL_GRID),
        OracleReport::new(&format!("conjugate alpha={alpha} outside"), missed.0, missed.1, outside.len(), 0.0),
    ])
}

/// Monotonicity of a graph sample built from every case probe.
pub fn rockafellar_monotone_report(alpha: &Q) -> Result<OracleReport> {
    let f = rock(alpha)?;
    let xs: Vec<Vec<QSqrt2>> =
        rockafellar_case_points(alpha).iter().map(|c| c.x.iter().map(QSqrt2::from).collect()).collect();
    Ok(monotone_check(&MonotoneGraphSample::from_fn(&f, &xs))?.renamed(format!("monotone alpha={alpha}")))
}

/// [`structure_check`] at every probe with a nonempty subdifferential.
pub fn rockafellar_structure_reports(alpha: &Q) -> Result<Vec<OracleReport>> {
    let f = rock(alpha)?;
    let mut out = Vec::new();
    for c in rockafellar_case_points(alpha) {
        if case_is_empty(c.case) {
            continue;
        }
        out.push(structure_check(&f, &c.x)?.renamed(format!("structure alpha={alpha} case {} at {}", c.case, c.x)));
    }
    Ok(out)
}

/// Probes for the half-strip variant: the kink `x₂ = α − √x₁` at `x₁ = s²`,
/// points on either side of it, and the boundary line `x₁ = 0`.
pub fn halfstrip_points(alpha: &Q) -> Vec<QVec> {
    let mut out = Vec::new();
    for s in [qr(1, 2), q(1), q(2)] {
        let kink = alpha - &s;
        let x1 = &s * &s;
        for dy in [q(0), q(-1), qr(1, 2)] {
            out.push(QVec(vec![x1.clone(), &kink + dy]));
        }
    }
    for y in [alpha.clone(), alpha + q(1), alpha - q(1)] {
        out.push(QVec(vec![q(0), y]));
    }
    out.push(QVec(vec![q(-1), q(0)]));
    out
}

/// `subdiff_check` at every half-strip probe, exact domain equality and
/// monotonicity of the probed graph.
pub fn halfstrip_reports(alpha: &Q, steps: usize) -> Result<Vec<OracleReport>> {
    let a = QSqrt2::rational(alpha.clone());
    let f = ConvexFn::halfstrip(a.clone())?;
    let af = num_traits::ToPrimitive::to_f64(alpha).unwrap_or(1.0);
    let grid = case_grid(af.max(1.0), steps);
    let mut out = Vec::new();
    let mut xs = Vec::new();
    for p in halfstrip_points(alpha) {
        let x: Vec<QSqrt2> = p.iter().map(QSqrt2::from).collect();
        if f.subdiff_q(&x).is_empty() {
            continue;
        }
        out.push(subdiff_check(&f, &x, &grid)?.renamed(format!("halfstrip alpha={alpha} at {p}")));
        xs.push(x);
    }
    let dom_ok = set_equal(&f.dom_subdiff()?, &halfstrip_dom(&a).rationalize()?);
    out.push(OracleReport::new(&format!("halfstrip alpha={alpha} dom"), if dom_ok { 0.0 } else { 1.0 }, vec![], 1, 0.0));
    out.push(monotone_check(&MonotoneGraphSample::from_fn(&f, &xs))?.renamed(format!("monotone halfstrip alpha={alpha}")));
    Ok(out)
}

fn lattice(dim: usize, lo: i64, hi: i64, den: i64) -> Vec<Vec<QSqrt2>> {
    let axis: Vec<QSqrt2> = (lo * den..=hi * den).map(|k| QSqrt2::rational(qr(k, den))).collect();
    let mut out: Vec<Vec<QSqrt2>> = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|p| axis.iter().map(move |c| [p.clone(), vec![c.clone()]].concat())).collect();
    }
    out
}

/// One representative of every catalog kind, plus sums that satisfy the
/// qualification condition.
pub fn catalog_functions() -> Result<Vec<(String, ConvexFn)>> {
    let square = HRep::boxed(&QVec::from_ints(&[-1, -1]), &QVec::from_ints(&[1, 1]), false);
    let diamond = HRep::universe(2)
        .with_lt(&[1, 1], q(1))
        .with_lt(&[1, -1], q(1))
        .with_lt(&[-1, 1], q(1))
        .with_lt(&[-1, -1], q(1));
    let one = |v: i64| Some(q(v));
    let (c, s) = rotation_45(2);
    let mut out = vec![
        ("indicator square".to_string(), ConvexFn::indicator(&square)?),
        ("support square".to_string(), ConvexFn::support(&square)?),
        ("gauge reciprocal diamond".to_string(), ConvexFn::gauge_recip(diamond, QVec::zeros(2))?),
        ("rockafellar alpha=1".to_string(), ConvexFn::rockafellar(QSqrt2::one())?),
        ("rockafellar alpha=sqrt2".to_string(), ConvexFn::rockafellar(QSqrt2::sqrt2())?),
        ("halfstrip alpha=0".to_string(), ConvexFn::halfstrip(QSqrt2::zero())?),
        ("halfstrip alpha=1".to_string(), ConvexFn::halfstrip(QSqrt2::one())?),
        (
            "rotated rockafellar".to_string(),
            precompose(ConvexFn::rockafellar(QSqrt2::one())?, &c, &s, &QVec::from_ints(&[0, 1]), &QSqrt2::one())?,
        ),
    ];
    for (name, iv) in [
        ("closed", Interval::Closed { lo: one(-1), hi: one(2) }),
        ("open", Interval::Open { lo: one(-1), hi: one(2) }),
        ("left-open", Interval::LeftOpen { lo: q(-1), hi: q(2) }),
        ("right-open", Interval::RightOpen { lo: q(-1), hi: q(2) }),
        ("half-line", Interval::Open { lo: one(0), hi: None }),
    ] {
        out.push((format!("interval {name}"), ConvexFn::interval(iv)?));
    }
    let iv = |iv| ConvexFn::interval(iv);
    out.push((
        "sum of intervals".to_string(),
        sum_fn(vec![iv(Interval::Closed { lo: one(0), hi: one(2) })?, iv(Interval::Open { lo: one(1), hi: one(3) })?])?,
    ));
    out.push((
        "sum rockafellar + halfstrip".to_string(),
        sum_fn(vec![ConvexFn::rockafellar(q(2).into())?, ConvexFn::halfstrip(QSqrt2::one())?])?,
    ));
    out.push(("ncpolygon".to_string(), ncpolygon()?));
    Ok(out)
}

/// Monotonicity of `∂f` sampled on a dyadic lattice, for every entry of
/// [`catalog_functions`].
pub fn catalog_monotone_reports() -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for (name, f) in catalog_functions()? {
        let xs = lattice(f.dim(), -3, 3, 4);
        out.push(monotone_check(&MonotoneGraphSample::from_fn(&f, &xs))?.renamed(format!("monotone {name}")));
    }
    Ok(out)
}

/// Monotonicity of the nearest-point map of `count` random finite sets of
/// rational points, each paired with every point of a lattice.
pub fn projection_monotone_report(count: usize, seed: u64) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: Option<OracleReport> = None;
    let mut samples = 0;
    for k in 0..count {
        let dim = 1 + k % 3;
        let size = rng.gen_range(1..=6);
        let c: Vec<QVec> =
            (0..size).map(|_| QVec((0..dim).map(|_| qr(rng.gen_range(-8..=8), rng.gen_range(1..=4))).collect())).collect();
        let mut sample = MonotoneGraphSample::default();
        for x in lattice(dim, -2, 2, if dim == 3 { 1 } else { 2 }) {
            let x = QVec(x.iter().map(|c| c.as_rational().expect("rational lattice").clone()).collect());
            for p in project_finite(&c, &x)? {
                sample.pairs.push((x.to_f64(), p.to_f64()));
            }
        }
        let r = monotone_check(&sample)?;
        samples += r.samples_used;
        if worst.as_ref().map_or(true, |w| r.max_violation > w.max_violation) {
            worst = Some(r);
        }
    }
    let mut r = worst.ok_or(crate::error::Error::EmptySample)?.renamed(format!("monotone projection onto {count} finite sets"));
    r.samples_used = samples;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_row_has_three_probes_except_the_corner() {
        let pts = rockafellar_case_points(&q(1));
        for case in 1..=13 {
            let n = pts.iter().filter(|c| c.case == case).count();
            assert!(n >= if case == 10 { 1 } else { 3 }, "case {case}: {n}");
        }
    }

    #[test]
    fn probes_land_in_their_rows() {
        // the emptiness pattern and the number of generators identify the row
        let a = q(2);
        let f = rock(&a).unwrap();
        for c in rockafellar_case_points(&a) {
            let v = f.subdiff(&c.x);
            let want = match c.case {
                1 | 2 => 0,
                5 | 6 | 11 => 2,
                10 => 3,
                _ => 1,
            };
            assert_eq!(v.points.len(), want, "case {} at {}", c.case, c.x);
        }
    }

    #[test]
    fn halfstrip_battery_passes() {
        for a in [q(0), q(1)] {
            for r in halfstrip_reports(&a, 41).unwrap() {
                assert!(r.passed, "{}", r.to_json_line());
            }
        }
    }

    #[test]
    fn catalog_is_monotone() {
        for r in catalog_monotone_reports().unwrap() {
            assert!(r.passed, "{}", r.to_json_line());
            assert!(r.samples_used > 10, "{}", r.name);
        }
    }

    #[test]
    fn projections_are_monotone() {
        assert!(projection_monotone_report(5, 1).unwrap().passed);
    }

    #[test]
    fn unit_alpha_sets() {
        assert!(rockafellar_set_reports(&q(1)).unwrap().iter().all(|r| r.passed));
    }
}
