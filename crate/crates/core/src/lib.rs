//! Lower central series of free and finitely presented graded algebras.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod field;
pub mod freealg;
pub mod freelie;
pub mod identities;
pub mod fsforms;
pub mod lcs;
pub mod linalg;
pub mod presented;
pub mod series;

pub use algebra::{FreeAlgebra, GradedAlgebra, MultiDegree};
pub use error::{Error, FieldError, Result};
pub use field::{Field, FieldSpec, Fp, Rationals};
pub use freealg::{DegreeIndex, FreePolynomial, Word};
pub use lcs::{FiltrationTable, Lcs};
pub use linalg::{Echelon, Subspace};
pub use presented::{GradedQuotient, Presentation, QuotientAlgebra};
