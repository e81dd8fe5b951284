//! Exact covering decisions by recursive splitting along piece rows.

use super::NcSet;
use crate::num::QVec;
use crate::poly::{contains_poly, intersects, strict_feasible, HRep, Row};

/// A point of `d` lying in none of `pieces`, or `None` when `d` is covered.
///
/// Cells are refined by one cutting row at a time (split into `<`, `=`,
/// `>`), so every row of every relevant piece is eventually sign-constant on
/// a cell and coverage of that cell is decided by containment.
pub fn uncovered_point(d: &HRep, pieces: &[HRep]) -> Option<QVec> {
    let refs: Vec<&HRep> = pieces.iter().collect();
    search(d, &refs)
}

fn search(d: &HRep, pieces: &[&HRep]) -> Option<QVec> {
    let w = strict_feasible(d)?;
    let hits: Vec<&HRep> = pieces.iter().copied().filter(|p| intersects(d, p)).collect();
    if !hits.iter().any(|p| p.contains(&w)) {
        return Some(w);
    }
    if hits.iter().any(|p| contains_poly(p, d)) {
        return None;
    }
    let cut = hits.iter().find_map(|p| cutting_row(d, p)).expect("uncontained piece has a cutting row");
    for cell in split(d, &cut) {
        if let Some(x) = search(&cell, &hits) {
            return Some(x);
        }
    }
    None
}

/// A row of `p` whose sign is not constant on `d`.
fn cutting_row(d: &HRep, p: &HRep) -> Option<Row> {
    p.eq.iter()
        .chain(&p.le)
        .chain(&p.lt)
        .find(|r| {
            let below = HRep { dim: d.dim, eq: vec![], le: vec![], lt: vec![(*r).clone()] };
            let on = HRep { dim: d.dim, eq: vec![(*r).clone()], le: vec![], lt: vec![] };
            let above = HRep { dim: d.dim, eq: vec![], le: vec![], lt: vec![r.neg()] };
            [below, on, above].iter().filter(|s| intersects(d, s)).count() > 1
        })
        .cloned()
}

fn split(d: &HRep, r: &Row) -> [HRep; 3] {
    let mut below = d.clone();
    below.lt.push(r.clone());
    let mut on = d.clone();
    on.eq.push(r.clone());
    let mut above = d.clone();
    above.lt.push(r.neg());
    [below, on, above]
}

/// `a ⊆ b` as point sets.
pub fn set_subset(a: &NcSet, b: &NcSet) -> bool {
    a.pieces.iter().all(|p| uncovered_point(p, &b.pieces).is_none())
}

pub fn set_equal(a: &NcSet, b: &NcSet) -> bool {
    a.dim == b.dim && set_subset(a, b) && set_subset(b, a)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    #[test]
    fn two_halves_cover_the_line_only_with_the_origin() {
        let neg = HRep::universe(1).with_lt(&[1], q(0));
        let pos = HRep::universe(1).with_lt(&[-1], q(0));
        let line = HRep::universe(1);
        let w = uncovered_point(&line, &[neg.clone(), pos.clone()]).unwrap();
        assert_eq!(w, QVec::from_ints(&[0]));
        let origin = HRep::point(&QVec::zeros(1));
        assert!(uncovered_point(&line, &[neg, pos, origin]).is_none());
    }

    #[test]
    fn square_covered_by_triangles_and_diagonal() {
        let sq = HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), false);
        let lower = sq.clone().with_lt(&[-1, 1], q(0));
        let upper = sq.clone().with_lt(&[1, -1], q(0));
        let diag = sq.clone().with_eq(&[1, -1], q(0));
        assert!(uncovered_point(&sq, &[lower.clone(), upper.clone(), diag]).is_none());
        let gap = uncovered_point(&sq, &[lower, upper]).unwrap();
        assert_eq!(gap[0], gap[1]);
    }
}
