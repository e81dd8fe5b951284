//! Subdifferential domains of the basic catalog functions.

use ncx::num::{parse_q, q, QSqrt2, QVec};
use ncx::poly::HRep;
use ncx::subdiff::{ConvexFn, Interval};

fn show(name: &str, f: &ConvexFn, at: &[i64]) -> ncx::Result<()> {
    let dom = f.dom_subdiff()?;
    let x: Vec<QSqrt2> = at.iter().map(|&v| QSqrt2::rational(q(v))).collect();
    println!("{name}");
    println!("  dom ∂f = {}", serde_json::to_string(&dom)?);
    println!("  ∂f{:?} = {}", at, serde_json::to_string(&f.subdiff_q(&x))?);
    Ok(())
}

fn main() -> ncx::Result<()> {
    let square = HRep::boxed(&QVec::from_ints(&[-1, -1]), &QVec::from_ints(&[1, 1]), false);
    show("indicator of [-1,1]²", &ConvexFn::indicator(&square)?, &[1, 0])?;
    show("support of [-1,1]²", &ConvexFn::support(&square)?, &[0, 0])?;

    // 1 / (1 - ρ) blows up at the boundary of the open diamond, so dom ∂f is open
    let diamond = HRep::universe(2)
        .with_lt(&[1, 1], q(1))
        .with_lt(&[1, -1], q(1))
        .with_lt(&[-1, 1], q(1))
        .with_lt(&[-1, -1], q(1));
    show("gauge reciprocal of the open diamond", &ConvexFn::gauge_recip(diamond, QVec::zeros(2))?, &[0, 0])?;

    let half_open = Interval::LeftOpen { lo: q(0), hi: parse_q("3/2")? };
    show("interval (0, 3/2]", &ConvexFn::interval(half_open)?, &[1])?;
    show("open half line", &ConvexFn::interval(Interval::Open { lo: Some(q(0)), hi: None })?, &[2])?;
    Ok(())
}
