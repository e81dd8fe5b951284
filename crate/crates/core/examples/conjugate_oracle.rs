//! The closed-form conjugate of the Rockafellar function against a brute
//! force supremum over a grid.

use ncx::oracle::{conj_oracle, Grid};
use ncx::subdiff::{rockafellar_conjugate, ConvexFn};
use ncx::num::QSqrt2;

fn main() -> ncx::Result<()> {
    let f = ConvexFn::rockafellar(QSqrt2::one())?;
    let grid = Grid::cube(2, -4.0, 4.0, 200).with_refine(4);
    println!("{:>14} {:>14} {:>14} {:>10}", "xi*", "closed form", "grid", "error");
    for xs in [[-0.5, 0.0], [-0.25, 0.5], [-1.0, -0.9], [-0.1, 0.99], [0.3, 0.0], [-1.0, 2.0]] {
        let exact = rockafellar_conjugate(1.0, &xs);
        let approx = conj_oracle(&f, &xs, &grid);
        let err = if exact.is_finite() { (exact - approx).abs() } else { 0.0 };
        println!("{:>14} {exact:>14.6} {approx:>14.6} {err:>10.1e}", format!("({}, {})", xs[0], xs[1]));
    }
    Ok(())
}
