//! Restricted Lie algebras of Cartan type over prime fields, their
//! structure checks, and the adjoint cohomology H^2(L, L) used to study
//! their deformations.

pub mod algebra;
pub mod cohomology;
pub mod deform;
pub mod error;
pub mod families;
pub mod fp;
pub mod grading;
pub mod linalg;
pub mod multiindex;
pub mod pmap;
pub mod poly;
pub mod simple;
pub mod sparse;

pub use error::{Error, Result};
pub use fp::{fp_inv, Field, Fp};
pub use multiindex::{multiindex_binom, multiindex_sign_conj, MultiIndex};
pub use poly::{poly_mul, poly_partial, TruncatedPolynomial};
pub use algebra::{Element, Grading, LieAlgebra, TableBuilder};
pub use families::{build, Family, FamilySpec};
