//! Exact computations in the Bershadsky-Polyakov vertex algebra W3(2).
//!
//! The crate derives the mode-bracket algebra of the generating fields
//! J, G+, G-, T from their defining OPEs, changes basis to the conformal
//! vector L = T + (1/2) dJ, computes in graded highest-weight and vacuum
//! modules over exact rational arithmetic, and reproduces the classification
//! data of simple modules at the exceptional levels k = p/2 - 3 (p odd).
//!
//! Layout:
//! - [`scalars`]: the coefficient field Q(k) (exact, canonical forms).
//! - [`linalg`]: dense exact linear algebra (kernels, echelon subspaces).
//! - [`ope`]: OPE table, commutator derivation, bracket verification,
//!   spectral flow on modes.
//! - [`weights`]: closed-form weight arithmetic (g, h_i, xi/chi labels,
//!   central charge, sl3 bookkeeping).
//! - [`modules`]: PBW bases, mode actions, singular vectors, quotient
//!   fixpoints, module twisting.

pub mod error;
pub mod linalg;
pub mod modules;
pub mod ope;
pub mod rng;
pub mod scalars;
pub mod weights;

pub use error::{CoreError, Result};
pub use scalars::{Poly, Rational, Scalar};
