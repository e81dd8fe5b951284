//! Builds a convex function on a triangle whose subdifferential domain drops
//! chosen boundary pieces, then checks the prediction against the exact domain.

use ncx::ncset::set_equal;
use ncx::num::{q, QVec};
use ncx::poly::HRep;
use ncx::subdiff::{assemble_polygon_fn, polygon_edges, Edge};

fn main() -> ncx::Result<()> {
    let triangle = HRep::universe(2).with_le(&[-1, 0], q(0)).with_le(&[0, -1], q(0)).with_le(&[1, 1], q(2));
    // a mark splits the hypotenuse at (1, 1)
    let marks = [QVec::from_ints(&[1, 1])];
    let edges = polygon_edges(&triangle, &marks)?;
    for (i, e) in edges.iter().enumerate() {
        match &e.edge {
            Edge::Segment { from, to } => println!("piece {i}: segment {from} .. {to}"),
            Edge::Ray { from, dir } => println!("piece {i}: ray from {from} along {dir}"),
            Edge::Line { through, dir } => println!("piece {i}: line through {through} along {dir}"),
        }
    }
    let asm = assemble_polygon_fn(&triangle, &marks, &[0, 2])?;
    let exact = asm.f.dom_subdiff()?;
    println!("predicted {}", serde_json::to_string(&asm.predicted_dom)?);
    println!("matches the exact domain: {}", set_equal(&asm.predicted_dom, &exact));
    Ok(())
}
