//! Verification harness for the `quotcodes` constructions: instance matrix,
//! claim suites, example reproductions and report rendering.

pub mod config;
pub mod engine;
pub mod repro;
pub mod report;
pub mod suites;

use thiserror::Error;

use quotcodes::codes::CodeError;
use quotcodes::construct::ConstructError;
use quotcodes::curve::CurveError;
use quotcodes::gf::GfError;
use quotcodes::rrspace::RrError;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Rr(#[from] RrError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, VerifyError>;
