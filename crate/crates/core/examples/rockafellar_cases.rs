//! Walks the thirteen rows of the Rockafellar subdifferential table at exact
//! probe points and prints the set returned for each.

use ncx::num::{qr, QSqrt2};
use ncx::oracle::suite::{rockafellar_case_points, CASE_LABELS};
use ncx::subdiff::{rockafellar_eval, rockafellar_subdiff};

fn main() {
    let alpha = qr(1, 1);
    let a = QSqrt2::rational(alpha.clone());
    let mut last = 0;
    for c in rockafellar_case_points(&alpha) {
        if c.case != last {
            println!("case {:>2}: {}", c.case, CASE_LABELS[c.case - 1]);
            last = c.case;
        }
        let x: Vec<QSqrt2> = c.x.iter().map(QSqrt2::from).collect();
        let sub = rockafellar_subdiff(&a, &x);
        let val = rockafellar_eval(1.0, &c.x.to_f64());
        println!("    x = {}  f = {val:.4}  ∂f = {}", c.x, serde_json::to_string(&sub).unwrap());
    }

    // irrational parameters stay exact
    let root = QSqrt2::sqrt2();
    let x = [QSqrt2::rational(qr(2, 1)), QSqrt2::rational(qr(0, 1))];
    println!("alpha = √2, x = (2, 0): ∂f = {}", serde_json::to_string(&rockafellar_subdiff(&root, &x)).unwrap());
}
