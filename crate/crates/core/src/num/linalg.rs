//! Small exact linear-algebra kernels over rationals.

use num_traits::{One, Zero};

use super::rational::{QVec, Q};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[QVec], n: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut m: Vec<QVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        m[r] = m[r].scale(&inv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = -m[i][c].clone();
                m[i] = m[i].axpy(&f, &m[r]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVec], n: usize) -> usize {
    rref(rows, n).0.len()
}

/// Basis of `{x : row . x = 0 for every row}`.
pub fn null_space(rows: &[QVec], n: usize) -> Vec<QVec> {
    let (r, pivots) = rref(rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = QVec::zeros(n);
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `sum c_i basis_i = v`, if `v` lies in the span.
pub fn solve_in_span(v: &QVec, basis: &[QVec]) -> Option<Vec<Q>> {
    let n = v.dim();
    let k = basis.len();
    // Augmented system: columns are basis vectors, rhs is v.
    let rows: Vec<QVec> = (0..n)
        .map(|i| {
            let mut r: Vec<Q> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            QVec(r)
        })
        .collect();
    let (r, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Q::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
pub fn project_out(v: &QVec, basis: &[QVec]) -> QVec {
    if basis.is_empty() {
        return v.clone();
    }
    let n = v.dim();
    let (b, _) = rref(basis, n);
    let k = b.len();
    // Gram system G c = B v.
    let rows: Vec<QVec> = (0..k)
        .map(|i| {
            let mut r: Vec<Q> = (0..k).map(|j| b[i].dot(&b[j])).collect();
            r.push(b[i].dot(v));
            QVec(r)
        })
        .collect();
    let (sol, pivots) = rref(&rows, k + 1);
    let mut out = v.clone();
    for (row, &p) in sol.iter().zip(&pivots) {
        let c = row[k].clone();
        out = out.axpy(&(-c), &b[p]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qr};

    #[test]
    fn null_space_of_diagonal_line() {
        let ns = null_space(&[QVec::from_ints(&[1, -1])], 2);
        assert_eq!(ns, vec![QVec::from_ints(&[1, 1])]);
    }

    #[test]
    fn rank_counts_independent_rows() {
        let rows = [QVec::from_ints(&[1, 2, 3]), QVec::from_ints(&[2, 4, 6]), QVec::from_ints(&[0, 1, 0])];
        assert_eq!(rank(&rows, 3), 2);
    }

    #[test]
    fn projection_removes_span_component() {
        let v = QVec::from_ints(&[1, 1]);
        let p = project_out(&v, &[QVec::from_ints(&[1, 0])]);
        assert_eq!(p, QVec::from_ints(&[0, 1]));
        let p = project_out(&QVec::from_ints(&[2, 0]), &[QVec::from_ints(&[1, 1])]);
        assert_eq!(p, QVec(vec![q(1), q(-1)]));
        let c = solve_in_span(&QVec::from_ints(&[1, 2]), &[QVec::from_ints(&[2, 4])]).unwrap();
        assert_eq!(c, vec![qr(1, 2)]);
    }
}
