//! Zero-generic initial ideals, local cohomology of weakly stable monomial
//! ideals, and the regularity criteria built on them.

pub mod change;
pub mod cohomology;
pub mod criteria;
pub mod error;
pub mod field;
pub mod gin;
pub mod groebner;
pub mod ideal;
pub mod job;
pub mod monideal;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use error::{Error, Result};
