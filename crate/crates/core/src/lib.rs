//! Exact homological algebra for tilting theory over finite-dimensional
//! algebras.
//!
//! Everything is computed exactly over `Q` or a prime field. Right modules
//! are matrix representations acting on row vectors (`m·a = m · A_a`), and a
//! morphism `f: M → N` is a `dim M × dim N` matrix `F` with `m ↦ m·F`, so the
//! composite "first `f`, then `g`" is the product `F·G`. Left modules are
//! right modules over the opposite algebra.

pub mod algebra;
pub mod corpus;
pub mod decompose;
pub mod derived;
pub mod equivalence;
pub mod input;
pub mod homology;
pub mod linalg;
pub mod module;
pub mod pipeline;
pub mod report;
pub mod tilting;

pub use algebra::{Algebra, QuiverPresentation};
pub use linalg::{Field, KernelError, Mat, RowSpace, Scalar};
pub use module::{ModuleMorphism, RightModule};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("modules are defined over different algebras")]
    AlgebraMismatch,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
