//! Exact homological computations over the six-dimensional local algebra Λ(q)
//! and its three-dimensional local modules.

pub mod algebra;
pub mod error;
pub mod family;
pub mod field;
pub mod matrix;
pub mod module;
pub mod verify;

pub use algebra::{Algebra, SeriesReport, Side};
pub use error::{Error, Result};
pub use field::{Field, FieldKind, OrderResult, Scalar};
pub use matrix::{Matrix, Rref, Subspace};
pub use module::{HomSpace, IsoWitness, Module, ModuleMap, Quotient, Submodule, Verdict};
pub use family::{ClassificationReport, Descriptor, LambdaFamily, ProjPoint, QuiverGraph};
pub use verify::{CheckRecord, CheckStatus, VerifyOptions, VerifyReport};
