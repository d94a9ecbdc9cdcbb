//! Unital twisted partial actions of the integers on finite rings, the
//! twisted partial skew power-series and Laurent-series rings they generate,
//! and exact brute-force verification of the structural theory (primality
//! transfer, radical formulas, Goldie rank, globalization) on finite
//! materializations.

pub mod canonical;
pub mod error;
pub mod goldie;
pub mod harness;
pub mod ideals;
pub mod paction;
pub mod report;
pub mod ringcore;
pub mod skewseries;

pub use error::{Error, Result};
