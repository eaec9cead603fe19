//! OPE data and the mode-bracket algebra derived from it.
//!
//! The stored table holds the singular parts of the defining OPEs of the
//! generating fields J, G+, G-, T. Commutators come out of the commutator
//! formula in a single internal convention (every field expanded with
//! z^{-n-1}), display indices are restored at the boundary, and the basis
//! change to the conformal vector L = T + (1/2) dJ is a separate rewriting
//! step. Verification compares the derived brackets against the closed-form
//! list symbolically in k on an index grid.

mod bracket;
mod fields;
mod flow;
mod modes;
mod table;
mod verify;

pub use bracket::{to_l_basis, BracketEngine, GENERATORS, L_BASIS_GENERATORS};
pub use fields::{FieldExpr, FieldId, FieldTerm};
pub use flow::{
    flow_expression, flow_mode, flow_mode_power, pin_flow_constants, FlowConstantPin,
};
pub use modes::{ModeExpression, ModeSymbol};
pub use table::{OpeEntry, OpeTable, MAX_POLE};
pub use verify::{
    central_charge_scalar, reference_bracket, verify_bracket_table, BracketCheck, BracketReport,
    GgCentralVariant,
};
