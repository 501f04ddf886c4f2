use thiserror::Error;

use crate::rootdata::RootSystemType;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("resource bound exceeded: {what} has size {size}, bound is {bound}")]
    Resource {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("({ty}, ell={ell}) is excluded; use {}", substitutes(.substitute))]
    Excluded {
        ty: RootSystemType,
        ell: u32,
        substitute: Vec<RootSystemType>,
    },
    #[error("classification error: {0}")]
    Classification(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn substitutes(s: &[RootSystemType]) -> String {
    s.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" x ")
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
