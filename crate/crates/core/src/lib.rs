//! Exact verification of the Frey-curve argument for first-case solutions of
//! `x^13 + y^13 = C z^p`.

pub mod bipoly;
pub mod coprimality;
pub mod cyclotomic;
pub mod elimination;
pub mod error;
pub mod exactalg;
pub mod frey;
pub mod localred;
pub mod pipeline;
pub mod quadfield;
pub mod report;
mod serde_util;
pub mod traces;

pub use error::{Error, Result};
