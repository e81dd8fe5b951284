//! Recession data of nearly convex sets: the cone of the closure, exact
//! membership in `rec E` and whether a linear image stays closed.

use ncx::cli::{half_plane_minus_segment, strip_with_corners};
use ncx::ncset::{closedness_check, is_bounded, rec_classify, rec_membership, NcSet};
use ncx::num::QVec;
use ncx::poly::LinMap;

fn report(name: &str, e: &NcSet) -> ncx::Result<()> {
    let r = rec_classify(e)?;
    println!("{name}: bounded {}, span condition {}", is_bounded(e)?, r.span_condition);
    for (y, inside) in &r.membership_answers {
        println!("  {y} in rec E: {inside}");
    }
    Ok(())
}

fn main() -> ncx::Result<()> {
    let strip = strip_with_corners();
    report("strip with corners", &strip)?;
    // the closure recedes upwards, the set itself does not: the corners cannot move
    println!("  (0, 1) in rec cl E: {}", ncx::poly::contains_poly(&rec_classify(&strip)?.rec_cl, &ncx::poly::HRep::point(&QVec::from_ints(&[0, 1]))));
    println!("  (0, 1) in rec E: {}", rec_membership(&strip, &QVec::from_ints(&[0, 1])));

    let half = half_plane_minus_segment(1);
    report("half plane minus a segment", &half)?;
    // sufficient condition for cl A E = A cl E: receding directions killed by A are lines
    for (axis, a) in [("x", LinMap::from_ints(&[&[1, 0]])), ("y", LinMap::from_ints(&[&[0, 1]]))] {
        println!("  closedness condition for the projection to {axis}: {}", closedness_check(&half, &a)?);
    }
    Ok(())
}
