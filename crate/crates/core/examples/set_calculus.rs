//! Images, preimages, sums and intersections of nearly convex sets.

use ncx::ncset::{nc_image, nc_intersect, nc_preimage, nc_sum, rel_interior, set_equal, NcSet};
use ncx::num::{q, QVec};
use ncx::poly::{HRep, LinMap};
use ncx::Error;

fn json(e: &NcSet) -> String {
    serde_json::to_string(e).expect("sets serialize")
}

fn main() -> ncx::Result<()> {
    let open_square = HRep::boxed(&QVec::from_ints(&[0, 0]), &QVec::from_ints(&[2, 2]), true);
    let e = NcSet::from_piece(open_square).with(HRep::point(&QVec::from_ints(&[0, 0])));

    // projecting to the first axis keeps the left end: [0, 2)
    let first = LinMap::from_ints(&[&[1, 0]]);
    println!("image      {}", json(&nc_image(&e, &first)));

    // pulling back along t ↦ (t, t) gives [0, 2)
    let diagonal = LinMap::from_ints(&[&[1], &[1]]);
    println!("preimage   {}", json(&nc_preimage(&e, &diagonal)?));

    let segment = NcSet::from_piece(HRep::universe(2).with_eq(&[0, 1], q(0)).with_le(&[1, 0], q(1)).with_le(&[-1, 0], q(0)));
    let s = nc_sum(&e, &segment);
    println!("sum        {} pieces, ri has {} rows", s.pieces.len(), rel_interior(&s)?.lt.len());

    let shifted = nc_image(&e, &LinMap::identity(2).with_offset(QVec::from_ints(&[1, 1])));
    let both = nc_intersect(&[e.clone(), shifted])?;
    println!("intersect  {}", json(&both));
    // the shifted corner (1, 1) lies inside the first square, so it survives
    let want = NcSet::from_piece(HRep::boxed(&QVec::from_ints(&[1, 1]), &QVec::from_ints(&[2, 2]), true))
        .with(HRep::point(&QVec::from_ints(&[1, 1])));
    assert!(set_equal(&both, &want));

    // touching closures without a common relative interior point are refused
    let far = nc_image(&e, &LinMap::identity(2).with_offset(QVec::from_ints(&[2, 0])));
    match nc_intersect(&[e, far]) {
        Err(Error::CqViolated(why)) => println!("refused    {why}"),
        other => println!("unexpected {other:?}"),
    }
    Ok(())
}
