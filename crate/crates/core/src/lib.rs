//! Exact symbolic verification engine for the quantized BFV complex of the
//! N=1 spinning particle.
//!
//! Everything is computed over exact rationals: the graded supercommutative
//! algebra ([`superalg`]), the constant-coefficient Poisson bracket and Moyal
//! star product ([`brackets`]), the spinning-particle model with its
//! differentials and cocycle families ([`model`]), bigraded cohomology and
//! the first spectral-sequence page ([`cohomology`]), and the identity
//! catalog ([`verify`]).

pub mod brackets;
pub mod cohomology;
pub mod matrix;
pub mod model;
pub mod sampling;
pub mod superalg;
pub mod verify;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("elements belong to different generator tables")]
    TableMismatch,
    #[error("negative exponent on non-Laurent generator `{0}`")]
    NegativeExponent(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("{0}")]
    Domain(String),
    #[error("unsupported background: {0}")]
    UnsupportedBackground(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use superalg::{Element, GeneratorSpec, GeneratorTable, Grading, Monomial, Parity};
