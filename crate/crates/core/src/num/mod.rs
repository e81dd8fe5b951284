//! Exact scalars: arbitrary-precision rationals, rational vectors, and the
//! quadratic field used for 45-degree rotations.

mod linalg;
mod qsqrt2;
mod rational;

pub use linalg::{null_space, rank, rref, solve_in_span, project_out};
pub use qsqrt2::QSqrt2;
pub use rational::{fmt_q, parse_q, q, qr, serde_q, serde_qvec, QVec, Q};
