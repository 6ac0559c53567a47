pub mod bsequence;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod free_mod;
pub mod groebner;
pub mod hilbert;
pub mod manifest;
pub mod koszul;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod scalar;

pub use error::{Error, Result};
