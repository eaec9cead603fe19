//! Mode commutators derived from the OPE table through the commutator
//! formula [A_(m), B_(n)] = sum_{j>=0} C(m, j) (A_(j)B)_(m+n-j), stated in
//! the internal convention A(z) = sum A_(n) z^{-n-1} for every field.
//! Conversion to and from display indices happens at the boundary, and the
//! basis change T_n = L_n + ((n+1)/2) J_n is applied on request.

use crate::error::{CoreError, Result};
use crate::scalars::{binomial, falling, Scalar};

use super::fields::{FieldExpr, FieldId};
use super::modes::{ModeExpression, ModeSymbol};
use super::table::{OpeTable, MAX_POLE};

/// The fields whose OPEs are stored; commutators are derived for these.
pub const GENERATORS: [FieldId; 4] = [FieldId::J, FieldId::GPlus, FieldId::GMinus, FieldId::T];

/// Generator families in the conformal basis used by modules and brackets
/// downstream.
pub const L_BASIS_GENERATORS: [FieldId; 4] =
    [FieldId::J, FieldId::GPlus, FieldId::GMinus, FieldId::L];

/// Modes of a field expression at internal index `idx`: derivative terms are
/// rewritten through (d^d X)_(n) = (-1)^d n(n-1)...(n-d+1) X_(n-d) and
/// identity modes resolve to a central contribution at internal index -1.
fn modes_of(expr: &FieldExpr, idx: i64) -> ModeExpression {
    let mut out = ModeExpression::zero();
    for (term, coeff) in expr.terms() {
        let factor = {
            let f = falling(idx, term.deriv);
            let sign = if term.deriv % 2 == 0 { 1 } else { -1 };
            coeff.scale_rational(&(&f * &crate::scalars::Rational::from_int(sign)))
        };
        if factor.is_zero() {
            continue;
        }
        let base = idx - term.deriv as i64;
        match term.field {
            FieldId::Identity => {
                if base == -1 {
                    out.add_central(&factor);
                }
            }
            FieldId::JSquared => {
                out.add_j_squared(base - FieldId::JSquared.display_shift(), factor);
            }
            f => {
                out.add_linear(ModeSymbol::new(f, base - f.display_shift()), factor);
            }
        }
    }
    out
}

/// Bracket derivation engine over a fixed OPE table.
#[derive(Clone, Debug)]
pub struct BracketEngine {
    table: OpeTable,
}

impl Default for BracketEngine {
    fn default() -> Self {
        BracketEngine::new()
    }
}

impl BracketEngine {
    pub fn new() -> Self {
        BracketEngine {
            table: OpeTable::standard(),
        }
    }

    pub fn table(&self) -> &OpeTable {
        &self.table
    }

    /// [A_m, B_n] for A, B among the stored generators {J, G+, G-, T},
    /// with display indices in and out. The result is in the T-basis.
    pub fn commutator(&self, a: FieldId, m: i64, b: FieldId, n: i64) -> Result<ModeExpression> {
        if !GENERATORS.contains(&a) || !GENERATORS.contains(&b) {
            return Err(CoreError::InvalidArgument(format!(
                "commutator inputs must be among J, G+, G-, T; got {a} and {b}"
            )));
        }
        let mi = m + a.display_shift();
        let ni = n + b.display_shift();
        let mut out = ModeExpression::zero();
        for j in 0..MAX_POLE {
            let c = binomial(mi, j);
            if c.is_zero() {
                continue;
            }
            let prod = self.table.product(a, b, j)?;
            if prod.is_zero() {
                continue;
            }
            let contrib = modes_of(&prod, mi + ni - j as i64);
            out.add_scaled(&contrib, &Scalar::from_rational(c));
        }
        Ok(out)
    }

    /// [a, b] for modes among {J, G+, G-, T, L}: L inputs expand through
    /// L_m = T_m - ((m+1)/2) J_m, and the result is rewritten into the
    /// L-basis (no T modes remain).
    pub fn bracket(&self, a: ModeSymbol, b: ModeSymbol) -> Result<ModeExpression> {
        let expand = |s: ModeSymbol| -> Vec<(ModeSymbol, Scalar)> {
            if s.family == FieldId::L {
                vec![
                    (ModeSymbol::new(FieldId::T, s.index), Scalar::one()),
                    (
                        ModeSymbol::new(FieldId::J, s.index),
                        Scalar::ratio(-(s.index + 1), 2),
                    ),
                ]
            } else {
                vec![(s, Scalar::one())]
            }
        };
        let mut out = ModeExpression::zero();
        for (sa, ca) in expand(a) {
            for (sb, cb) in expand(b) {
                let term = self.commutator(sa.family, sa.index, sb.family, sb.index)?;
                out.add_scaled(&term, &(&ca * &cb));
            }
        }
        Ok(to_l_basis(&out))
    }
}

/// Rewrite T modes into the conformal basis: T_n = L_n + ((n+1)/2) J_n.
pub fn to_l_basis(expr: &ModeExpression) -> ModeExpression {
    let mut out = ModeExpression::zero();
    out.central = expr.central.clone();
    for (l, c) in &expr.j_squared {
        out.add_j_squared(*l, c.clone());
    }
    for (sym, c) in &expr.linear {
        if sym.family == FieldId::T {
            out.add_linear(ModeSymbol::new(FieldId::L, sym.index), c.clone());
            out.add_linear(
                ModeSymbol::new(FieldId::J, sym.index),
                c * &Scalar::ratio(sym.index + 1, 2),
            );
        } else {
            out.add_linear(*sym, c.clone());
        }
    }
    out
}
