//! Graded highest-weight and vacuum modules with PBW bases: exact mode
//! actions, singular-vector detection, iterated quotienting to the graded
//! dimensions of simple quotients, null-vector membership, and spectral-flow
//! twisting.

mod context;
mod jacobi;
mod pbw;
mod quotient;
mod twist;

pub use context::{ModuleContext, Truncation};
pub use jacobi::{default_jacobi_levels, verify_module_jacobi, JacobiReport};
pub use pbw::{enumerate_block, pbw_key, GradedVector, ModuleKind, PbwMonomial};
pub use quotient::{
    iterate_quotient, iterate_quotient_with, null_vector_report, singular_in_block,
    top_dimension, Block, BlockDim, BlockState, NullVectorReport, QuotientOptions, QuotientState,
    SingularRecord, TopDimension,
};
pub use twist::{twist_module, TwistOutcome};
