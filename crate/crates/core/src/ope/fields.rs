//! Field labels and finite field expressions (OPE right-hand sides).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::scalars::Scalar;

/// The fields that occur in the OPE data and in derived brackets. Derivatives
/// are not separate labels; a [`FieldTerm`] carries a derivative order, so
/// dJ is `(J, 1)`, and dT, dG+- (which arise when an OPE is read in the
/// swapped order) need no extra variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FieldId {
    Identity,
    J,
    GPlus,
    GMinus,
    T,
    L,
    JSquared,
}

impl FieldId {
    /// Conformal weight under L.
    pub fn weight(self) -> i64 {
        match self {
            FieldId::Identity => 0,
            FieldId::J | FieldId::GPlus => 1,
            FieldId::GMinus | FieldId::T | FieldId::L | FieldId::JSquared => 2,
        }
    }

    /// J_0-charge.
    pub fn charge(self) -> i64 {
        match self {
            FieldId::GPlus => 1,
            FieldId::GMinus => -1,
            _ => 0,
        }
    }

    /// Shift between the displayed mode index and the internal one:
    /// internal = display + shift. Fields expanded as sum A_n z^{-n-2}
    /// (weight-2 display convention) have shift 1.
    pub fn display_shift(self) -> i64 {
        match self {
            FieldId::J | FieldId::GPlus => 0,
            FieldId::GMinus | FieldId::T | FieldId::L | FieldId::JSquared => 1,
            FieldId::Identity => 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FieldId::Identity => "1",
            FieldId::J => "J",
            FieldId::GPlus => "G+",
            FieldId::GMinus => "G-",
            FieldId::T => "T",
            FieldId::L => "L",
            FieldId::JSquared => "(J^2)",
        }
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A field together with a derivative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldTerm {
    pub field: FieldId,
    pub deriv: u32,
}

impl FieldTerm {
    pub fn plain(field: FieldId) -> Self {
        FieldTerm { field, deriv: 0 }
    }
}

/// A finite Scalar-linear combination of field terms; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FieldExpr {
    terms: BTreeMap<FieldTerm, Scalar>,
}

impl FieldExpr {
    pub fn zero() -> Self {
        FieldExpr::default()
    }

    pub fn single(field: FieldId, coeff: Scalar) -> Self {
        let mut e = FieldExpr::zero();
        e.add_term(FieldTerm::plain(field), coeff);
        e
    }

    pub fn add_term(&mut self, term: FieldTerm, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(term).or_insert_with(Scalar::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&term);
        }
    }

    pub fn add_expr(&mut self, rhs: &FieldExpr, factor: &Scalar) {
        for (t, c) in &rhs.terms {
            self.add_term(*t, factor * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FieldTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, term: FieldTerm) -> Scalar {
        self.terms.get(&term).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Formal z-derivative: bumps each derivative order; the identity term is
    /// dropped (its derivative vanishes).
    pub fn derivative(&self) -> FieldExpr {
        let mut out = FieldExpr::zero();
        for (t, c) in &self.terms {
            if t.field == FieldId::Identity {
                continue;
            }
            out.add_term(
                FieldTerm {
                    field: t.field,
                    deriv: t.deriv + 1,
                },
                c.clone(),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_not_stored() {
        let mut e = FieldExpr::zero();
        e.add_term(FieldTerm::plain(FieldId::J), Scalar::one());
        e.add_term(FieldTerm::plain(FieldId::J), -Scalar::one());
        assert!(e.is_zero());
    }

    #[test]
    fn derivative_drops_identity() {
        let mut e = FieldExpr::single(FieldId::Identity, Scalar::from_int(5));
        e.add_term(FieldTerm::plain(FieldId::T), Scalar::one());
        let d = e.derivative();
        assert_eq!(d.coeff(FieldTerm { field: FieldId::T, deriv: 1 }), Scalar::one());
        assert_eq!(d.terms().count(), 1);
    }
}
