pub mod audit;
pub mod chars;
pub mod cli;
pub mod ellcurve;
pub mod error;
pub mod numfield;
pub mod perm;
pub mod quartic;
pub mod selmer;

pub use error::{Error, Result};
