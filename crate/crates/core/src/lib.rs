pub mod cli;
pub mod error;
pub mod num;
pub mod ncset;
pub mod oracle;
pub mod poly;
pub mod subdiff;

pub use error::{Error, Result};
