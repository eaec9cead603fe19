//! The defining OPE data of the algebra and j-th products derived from it.
//!
//! Stored entries are the singular parts of the seven nontrivial pairwise
//! OPEs among J, G+, G-, T (the JJ entry with the obvious (z-2) -> (z-w)
//! misprint corrected), plus the two vanishing same-sign entries
//! G+-(z)G+-(w) ~ 0. Products in the swapped order are not stored; they are
//! derived through skew-symmetry, which is exercised by the antisymmetry
//! checks downstream.

use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::scalars::{Rational, Scalar};

use super::fields::{FieldExpr, FieldId, FieldTerm};

/// Maximum pole order appearing in the defining OPEs.
pub const MAX_POLE: u32 = 4;

/// The singular part of one ordered OPE A(z)B(w): `poles[p]` is the
/// coefficient of (z-w)^{-p}; absent orders are zero.
#[derive(Clone, Debug)]
pub struct OpeEntry {
    pub lhs: (FieldId, FieldId),
    pub poles: BTreeMap<u32, FieldExpr>,
}

impl OpeEntry {
    fn new(lhs: (FieldId, FieldId)) -> Self {
        OpeEntry {
            lhs,
            poles: BTreeMap::new(),
        }
    }

    fn set(mut self, pole: u32, expr: FieldExpr) -> Self {
        assert!((1..=MAX_POLE).contains(&pole));
        if !expr.is_zero() {
            self.poles.insert(pole, expr);
        }
        self
    }

    /// j-th product A_(j)B = coefficient of the pole of order j+1.
    pub fn product(&self, j: u32) -> FieldExpr {
        self.poles.get(&(j + 1)).cloned().unwrap_or_default()
    }
}

/// The loaded OPE table; immutable after construction.
#[derive(Clone, Debug)]
pub struct OpeTable {
    entries: BTreeMap<(FieldId, FieldId), OpeEntry>,
}

fn sc(text: &str) -> Scalar {
    text.parse().expect("literal scalar")
}

impl OpeTable {
    /// The defining OPEs of the algebra at symbolic level k.
    pub fn standard() -> Self {
        use FieldId::*;
        let mut entries = BTreeMap::new();
        let mut put = |e: OpeEntry| {
            entries.insert(e.lhs, e);
        };

        // J(z)J(w) ~ (2k+3)/3 / (z-w)^2
        put(OpeEntry::new((J, J)).set(2, FieldExpr::single(Identity, sc("(2k+3)/(3)"))));

        // J(z)G+-(w) ~ +- G+-(w) / (z-w)
        put(OpeEntry::new((J, GPlus)).set(1, FieldExpr::single(GPlus, Scalar::one())));
        put(OpeEntry::new((J, GMinus)).set(1, FieldExpr::single(GMinus, -Scalar::one())));

        // T(z)T(w) ~ -(2k+3)(3k+1)/(2(k+3)) /(z-w)^4 + 2T/(z-w)^2 + dT/(z-w)
        put(
            OpeEntry::new((T, T))
                .set(4, FieldExpr::single(Identity, sc("(-6k^2-11k-3)/(2k+6)")))
                .set(2, FieldExpr::single(T, Scalar::from_int(2)))
                .set(1, FieldExpr::single(T, Scalar::one()).derivative()),
        );

        // T(z)G+-(w) ~ (3/2) G+- /(z-w)^2 + dG+- /(z-w)
        for g in [GPlus, GMinus] {
            put(
                OpeEntry::new((T, g))
                    .set(2, FieldExpr::single(g, Scalar::ratio(3, 2)))
                    .set(1, FieldExpr::single(g, Scalar::one()).derivative()),
            );
        }

        // T(z)J(w) ~ J /(z-w)^2 + dJ /(z-w)
        put(
            OpeEntry::new((T, J))
                .set(2, FieldExpr::single(J, Scalar::one()))
                .set(1, FieldExpr::single(J, Scalar::one()).derivative()),
        );

        // G+(z)G-(w) ~ (k+1)(2k+3)/(z-w)^3 + 3(k+1) J /(z-w)^2
        //            + (3 (J^2) + (3(k+1)/2) dJ - (k+3) T) /(z-w)
        let mut first_order = FieldExpr::single(JSquared, Scalar::from_int(3));
        first_order.add_term(
            FieldTerm {
                field: J,
                deriv: 1,
            },
            sc("(3k+3)/(2)"),
        );
        first_order.add_term(FieldTerm::plain(T), -sc("k+3"));
        put(
            OpeEntry::new((GPlus, GMinus))
                .set(3, FieldExpr::single(Identity, sc("2k^2+5k+3")))
                .set(2, FieldExpr::single(J, sc("3k+3")))
                .set(1, first_order),
        );

        // G+-(z)G+-(w) ~ 0
        put(OpeEntry::new((GPlus, GPlus)));
        put(OpeEntry::new((GMinus, GMinus)));

        OpeTable { entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = &OpeEntry> {
        self.entries.values()
    }

    pub fn entry(&self, a: FieldId, b: FieldId) -> Option<&OpeEntry> {
        self.entries.get(&(a, b))
    }

    /// j-th product A_(j)B, using the stored orientation when present and
    /// skew-symmetry B_(j)A = -sum_{i>=0} (-1)^{j+i} (d^i/i!) (A_(j+i)B)
    /// otherwise.
    pub fn product(&self, a: FieldId, b: FieldId, j: u32) -> Result<FieldExpr> {
        if let Some(e) = self.entries.get(&(a, b)) {
            return Ok(e.product(j));
        }
        let Some(e) = self.entries.get(&(b, a)) else {
            return Err(CoreError::MissingOpePair(a, b));
        };
        let mut out = FieldExpr::zero();
        let mut inv_fact = Rational::one();
        for i in 0..=(MAX_POLE.saturating_sub(1 + j)) {
            if i > 0 {
                inv_fact = &inv_fact / &Rational::from_int(i as i64);
            }
            let mut term = e.product(j + i);
            for _ in 0..i {
                term = term.derivative();
            }
            let sign = if (j + i).is_multiple_of(2) { -1 } else { 1 };
            let factor = Scalar::from_rational(&inv_fact * &Rational::from_int(sign));
            out.add_expr(&term, &factor);
        }
        Ok(out)
    }
}
