//! The modified Rockafellar function and its half-strip variant.
//!
//! `g_α(ξ) = max{α − √ξ₁, |ξ₂|}` on `ξ₁ ≥ 0`, and `max{α − √x₁, x₂}` on
//! `x₁ ≥ 0` for the half-strip.

use std::cmp::Ordering;

use super::q2::{Q2Piece, Q2Row, Q2Set};
use super::SubVal;
use crate::num::QSqrt2;

fn lit(x: i64) -> QSqrt2 {
    QSqrt2::rational(crate::num::q(x))
}

/// Order of `√ξ₁` against `w`, exactly, for `ξ₁ > 0`.
fn cmp_sqrt(xi1: &QSqrt2, w: &QSqrt2) -> Ordering {
    if w.signum() <= 0 {
        return Ordering::Greater;
    }
    xi1.cmp(&(w * w))
}

/// Order of `t` against `α − √ξ₁`, exactly, for `ξ₁ > 0`.
fn cmp_kink(t: &QSqrt2, alpha: &QSqrt2, xi1: &QSqrt2) -> Ordering {
    // t ? α − √ξ₁  ⇔  √ξ₁ ? α − t
    cmp_sqrt(xi1, &(alpha - t))
}

fn slope(xi1: &QSqrt2) -> f64 {
    -0.5 / xi1.to_f64().sqrt()
}

pub fn rockafellar_eval(alpha: f64, x: &[f64]) -> f64 {
    if x[0] < 0.0 {
        return f64::INFINITY;
    }
    (alpha - x[0].sqrt()).max(x[1].abs())
}

pub fn halfstrip_eval(alpha: f64, x: &[f64]) -> f64 {
    if x[0] < 0.0 {
        return f64::INFINITY;
    }
    (alpha - x[0].sqrt()).max(x[1])
}

/// The thirteen-case subdifferential table.
pub fn rockafellar_subdiff(alpha: &QSqrt2, x: &[QSqrt2]) -> SubVal {
    let (xi1, xi2) = (&x[0], &x[1]);
    let up = SubVal::point(vec![0.0, 1.0]);
    let down = SubVal::point(vec![0.0, -1.0]);
    match xi1.signum() {
        -1 => return SubVal::empty(),
        0 => {
            return match xi2.abs().cmp(alpha) {
                Ordering::Less => SubVal::empty(),
                _ if xi2.signum() > 0 => SubVal { points: vec![vec![0.0, 1.0]], rays: vec![vec![-1.0, 0.0]] },
                _ => SubVal { points: vec![vec![0.0, -1.0]], rays: vec![vec![-1.0, 0.0]] },
            }
        }
        _ => {}
    }
    let a2 = alpha * alpha;
    let s = slope(xi1);
    match xi1.cmp(&a2) {
        Ordering::Less => {
            let above = cmp_kink(xi2, alpha, xi1);
            let below = cmp_kink(&-xi2.clone(), alpha, xi1);
            match (above, below) {
                (Ordering::Equal, _) => SubVal::hull(vec![vec![s, 0.0], vec![0.0, 1.0]]),
                (_, Ordering::Equal) => SubVal::hull(vec![vec![s, 0.0], vec![0.0, -1.0]]),
                (Ordering::Greater, _) => up,
                (_, Ordering::Greater) => down,
                _ => SubVal::point(vec![s, 0.0]),
            }
        }
        Ordering::Equal => match xi2.signum() {
            0 => SubVal::hull(vec![vec![s, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]),
            1 => up,
            _ => down,
        },
        Ordering::Greater => match xi2.signum() {
            0 => SubVal::hull(vec![vec![0.0, 1.0], vec![0.0, -1.0]]),
            1 => up,
            _ => down,
        },
    }
}

pub fn halfstrip_subdiff(alpha: &QSqrt2, x: &[QSqrt2]) -> SubVal {
    let (x1, x2) = (&x[0], &x[1]);
    match x1.signum() {
        -1 => SubVal::empty(),
        0 if x2 < alpha => SubVal::empty(),
        0 => SubVal { points: vec![vec![0.0, 1.0]], rays: vec![vec![-1.0, 0.0]] },
        _ => {
            let s = slope(x1);
            match cmp_kink(x2, alpha, x1) {
                Ordering::Less => SubVal::point(vec![s, 0.0]),
                Ordering::Equal => SubVal::hull(vec![vec![0.0, 1.0], vec![s, 0.0]]),
                Ordering::Greater => SubVal::point(vec![0.0, 1.0]),
            }
        }
    }
}

fn row(a: [i64; 2], b: QSqrt2) -> Q2Row {
    Q2Row::new(vec![lit(a[0]), lit(a[1])], b)
}

/// `{ξ₁ > 0} ∪ {0} × (−∞, −α] ∪ {0} × [α, ∞)`.
pub fn rockafellar_dom(alpha: &QSqrt2) -> Q2Set {
    let open = Q2Piece { lt: vec![row([-1, 0], lit(0))], ..Default::default() };
    let top = Q2Piece { eq: vec![row([1, 0], lit(0))], le: vec![row([0, -1], -alpha.clone())], ..Default::default() };
    let bottom = Q2Piece { eq: vec![row([1, 0], lit(0))], le: vec![row([0, 1], -alpha.clone())], ..Default::default() };
    Q2Set { dim: 2, pieces: vec![open, top, bottom] }
}

/// `{x₁ > 0} ∪ {0} × [α, ∞)`.
pub fn halfstrip_dom(alpha: &QSqrt2) -> Q2Set {
    let open = Q2Piece { lt: vec![row([-1, 0], lit(0))], ..Default::default() };
    let top = Q2Piece { eq: vec![row([1, 0], lit(0))], le: vec![row([0, -1], -alpha.clone())], ..Default::default() };
    Q2Set { dim: 2, pieces: vec![open, top] }
}

/// The five-case conjugate.
pub fn rockafellar_conjugate(alpha: f64, xs: &[f64]) -> f64 {
    let (y1, y2) = (xs[0], xs[1]);
    let m = y2.abs();
    if y1 > 0.0 || m > 1.0 {
        return f64::INFINITY;
    }
    if m == 1.0 || y1 == 0.0 {
        return 0.0;
    }
    if y1 >= -1.0 / (2.0 * alpha) && m <= 1.0 + 2.0 * alpha * y1 {
        return alpha * alpha * y1;
    }
    -(1.0 - m).powi(2) / (4.0 * y1) - alpha * (1.0 - m)
}

/// `ran ∂g_α = {ξ₁ ≤ 0, |ξ₂| ≤ 1}`.
pub fn rockafellar_range() -> crate::poly::HRep {
    use crate::num::q;
    crate::poly::HRep::universe(2).with_le(&[1, 0], q(0)).with_le(&[0, 1], q(1)).with_le(&[0, -1], q(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qr;

    fn pt(a: i64, b: i64) -> Vec<QSqrt2> {
        vec![lit(a), lit(b)]
    }

    #[test]
    fn table_cases_at_unit_alpha() {
        let one = lit(1);
        assert!(rockafellar_subdiff(&one, &pt(0, 0)).is_empty());
        assert!(rockafellar_subdiff(&one, &pt(-1, 0)).is_empty());
        let v = rockafellar_subdiff(&one, &pt(1, 0));
        assert_eq!(v.points, vec![vec![-0.5, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]);
        let v = rockafellar_subdiff(&one, &pt(0, 1));
        assert_eq!((v.points.clone(), v.rays.clone()), (vec![vec![0.0, 1.0]], vec![vec![-1.0, 0.0]]));
        assert_eq!(rockafellar_subdiff(&one, &pt(4, 0)).points, vec![vec![0.0, 1.0], vec![0.0, -1.0]]);
        // kink: ξ₂ = 1 − √(1/4) = 1/2
        let kink = vec![QSqrt2::rational(qr(1, 4)), QSqrt2::rational(qr(1, 2))];
        assert_eq!(rockafellar_subdiff(&one, &kink).points, vec![vec![-1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn evaluation() {
        assert_eq!(rockafellar_eval(1.0, &[4.0, 0.0]), 0.0);
        assert_eq!(rockafellar_eval(1.0, &[-1.0, 0.0]), f64::INFINITY);
    }

    #[test]
    fn conjugate_table() {
        assert_eq!(rockafellar_conjugate(1.0, &[-0.5, 0.0]), -0.5);
        assert_eq!(rockafellar_conjugate(1.0, &[0.0, 0.5]), 0.0);
        assert_eq!(rockafellar_conjugate(1.0, &[-1.0, 0.0]), -0.75);
        assert_eq!(rockafellar_conjugate(1.0, &[1.0, 0.0]), f64::INFINITY);
    }

    #[test]
    fn halfstrip_boundary() {
        let one = lit(1);
        let v = halfstrip_subdiff(&one, &pt(0, 1));
        assert_eq!((v.points, v.rays), (vec![vec![0.0, 1.0]], vec![vec![-1.0, 0.0]]));
        assert!(halfstrip_subdiff(&one, &pt(0, 0)).is_empty());
    }
}
