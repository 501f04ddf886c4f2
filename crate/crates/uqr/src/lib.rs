//! R-matrices for small quantum groups.

#[macro_use]
pub mod parallel;

pub mod cyclo;
pub mod diamond;
pub mod equations;
pub mod error;
pub mod expected;
pub mod group;
pub mod lattice;
pub mod normal_form;
pub mod rootdata;
pub mod rsolver;
pub mod sweep;
pub mod uqverify;

pub use error::{Error, Result};
