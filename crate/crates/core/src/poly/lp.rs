//! Dense exact simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::{HRep, Row};
use crate::num::{QVec, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Q, x: QVec },
    Infeasible,
    Unbounded,
}

struct Tableau {
    t: Vec<Vec<Q>>,
    z: Vec<Q>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.t[r][c];
        for v in self.t[r].iter_mut() {
            *v *= &inv;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        if !self.z[c].is_zero() {
            let f = self.z[c].clone();
            for (v, p) in self.z.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs to optimality over the allowed columns. Returns false when unbounded.
    fn run(&mut self, allowed: &[bool]) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..self.width).find(|&j| allowed[j] && self.z[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(Q, usize, usize)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((br, _, bb)) => ratio < *br || (ratio == *br && self.basis[i] < *bb),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let Some((_, r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn set_objective(&mut self, cost: &[Q]) {
        let rhs = self.rhs();
        let mut z: Vec<Q> = cost.iter().map(|c| -c.clone()).collect();
        z.push(Q::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=rhs {
                if !self.t[i][j].is_zero() {
                    z[j] += cb * &self.t[i][j];
                }
            }
        }
        self.z = z;
    }
}

/// Maximizes `c . x` over `{eq rows, le rows}` with free variables.
pub fn maximize(c: &QVec, eq: &[Row], le: &[Row]) -> LpResult {
    let n = c.dim();
    let m = eq.len() + le.len();
    let ns = le.len();
    // Columns: x+ (n), x- (n), slacks (ns), artificials (m).
    let art0 = 2 * n + ns;
    let width = art0 + m;
    let mut t = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut needs_art = Vec::with_capacity(m);
    for (k, row) in eq.iter().chain(le).enumerate() {
        let mut r = vec![Q::zero(); width + 1];
        for j in 0..n {
            r[j] = row.a[j].clone();
            r[n + j] = -row.a[j].clone();
        }
        let is_le = k >= eq.len();
        if is_le {
            r[2 * n + (k - eq.len())] = Q::one();
        }
        r[width] = row.b.clone();
        if r[width].is_negative() {
            for v in r.iter_mut() {
                *v = -v.clone();
            }
        }
        let slack_basic = is_le && r[2 * n + (k - eq.len())].is_positive();
        if slack_basic {
            basis.push(2 * n + (k - eq.len()));
        } else {
            r[art0 + k] = Q::one();
            basis.push(art0 + k);
        }
        needs_art.push(!slack_basic);
        t.push(r);
    }
    let mut tab = Tableau { t, z: vec![], basis, width };

    // Phase I.
    let mut cost1 = vec![Q::zero(); width];
    for k in 0..m {
        if needs_art[k] {
            cost1[art0 + k] = -Q::one();
        }
    }
    if needs_art.iter().any(|&a| a) {
        tab.set_objective(&cost1);
        let all = vec![true; width];
        tab.run(&all);
        if tab.z[width].is_negative() {
            return LpResult::Infeasible;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= art0 {
                match (0..art0).find(|&j| !tab.t[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    // Phase II.
    let mut cost2 = vec![Q::zero(); width];
    for j in 0..n {
        cost2[j] = c[j].clone();
        cost2[n + j] = -c[j].clone();
    }
    tab.set_objective(&cost2);
    let allowed: Vec<bool> = (0..width).map(|j| j < art0).collect();
    if !tab.run(&allowed) {
        return LpResult::Unbounded;
    }
    let mut x = QVec::zeros(n);
    for (i, &b) in tab.basis.iter().enumerate() {
        let v = &tab.t[i][width];
        if b < n {
            x[b] += v;
        } else if b < 2 * n {
            x[b - n] -= v;
        }
    }
    LpResult::Optimal { value: tab.z[width].clone(), x }
}

/// A point satisfying every row of `h`, strict rows strictly, or `None`.
///
/// Maximizes a common slack `t <= 1` on the strict rows; the system is
/// strictly feasible iff the optimum is positive.
pub fn strict_feasible(h: &HRep) -> Option<QVec> {
    let n = h.dim;
    if h.lt.is_empty() {
        return match maximize(&QVec::zeros(n), &h.eq, &h.le) {
            LpResult::Optimal { x, .. } => Some(x),
            _ => None,
        };
    }
    let lift = |r: &Row, t: i64| Row::new(r.a.concat(&QVec::from_ints(&[t])), r.b.clone());
    let eq: Vec<Row> = h.eq.iter().map(|r| lift(r, 0)).collect();
    let mut le: Vec<Row> = h.le.iter().map(|r| lift(r, 0)).collect();
    le.extend(h.lt.iter().map(|r| lift(r, 1)));
    le.push(Row::new(QVec::unit(n + 1, n), Q::one()));
    match maximize(&QVec::unit(n + 1, n), &eq, &le) {
        LpResult::Optimal { value, x } if value.is_positive() => Some(QVec(x.0[..n].to_vec())),
        _ => None,
    }
}
