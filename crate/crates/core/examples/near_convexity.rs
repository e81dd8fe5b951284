//! Deciding near convexity, with a witness when it fails.

use ncx::ncset::{closure, decompose, is_nearly_convex, rel_interior, NcSet};
use ncx::num::{q, QVec};
use ncx::poly::HRep;

fn show(name: &str, e: &NcSet) -> ncx::Result<()> {
    let cert = is_nearly_convex(e);
    match &cert.witness {
        Some(w) => println!("{name}: not nearly convex, {w} is in ri cl E but not in E"),
        None => {
            let (_, boundary) = decompose(e)?;
            println!(
                "{name}: nearly convex; ri has {} strict rows, closure has {} rows, {} boundary faces kept",
                rel_interior(e)?.lt.len(),
                closure(e).le.len() + closure(e).eq.len(),
                boundary.pieces.len()
            );
        }
    }
    Ok(())
}

fn main() -> ncx::Result<()> {
    // open square plus one corner
    let square = HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[1, 1]), true);
    let with_corner = NcSet::from_piece(square.clone()).with(HRep::point(&QVec::from_ints(&[1, 1])));
    show("open square with a corner", &with_corner)?;

    // two rays from the origin; their hull is a quadrant that they do not fill
    let rays = NcSet::from_piece(HRep::universe(2).with_eq(&[0, 1], q(0)).with_le(&[-1, 0], q(0)))
        .with(HRep::universe(2).with_eq(&[1, 0], q(0)).with_le(&[0, -1], q(0)));
    show("two rays", &rays)?;

    // a punctured segment: the puncture lies in the relative interior
    let left = HRep::universe(2).with_eq(&[0, 1], q(0)).with_le(&[-1, 0], q(0)).with_lt(&[1, 0], q(1));
    let right = HRep::universe(2).with_eq(&[0, 1], q(0)).with_lt(&[-1, 0], q(-1)).with_le(&[1, 0], q(2));
    show("punctured segment", &NcSet::from_piece(left).with(right))?;
    Ok(())
}
