//! Exact linear algebra over `Q` and `F_p`.

mod field;
mod mat;
mod poly;
mod subspace;

pub use field::{Field, Scalar};
pub use mat::{Mat, Rref};
pub use poly::{minimal_polynomial, primary_component, rational_roots, Factor, Factorization, Poly};
pub use subspace::{row_image, row_kernel, QuotientMap, RowSpace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
