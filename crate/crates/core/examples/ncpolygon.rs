//! Four rotated Rockafellar functions whose sum has, as subdifferential
//! domain, an open quadrilateral together with its vertices.

use ncx::cli::{golden, Example};
use ncx::ncset::{is_nearly_convex, set_equal};
use ncx::subdiff::{ncpolygon, ncpolygon_golden};

fn main() -> ncx::Result<()> {
    let f = ncpolygon()?;
    let dom = f.dom_subdiff()?.canonicalize();
    println!("dom ∂f has {} pieces", dom.pieces.len());
    for p in &dom.pieces {
        println!("  {}", serde_json::to_string(p)?);
    }
    println!("nearly convex: {}", is_nearly_convex(&dom).verdict);
    println!("equals the hand-built set: {}", set_equal(&dom, &ncpolygon_golden()));
    println!("canonical form equals the stored golden: {}", dom == golden(Example::Ncpolygon)?.canonicalize());
    Ok(())
}
