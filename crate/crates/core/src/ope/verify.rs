//! Cross-validation of the OPE-derived commutators against the closed-form
//! bracket list, symbolically in k on a finite index grid.
//!
//! One normalization question is settled empirically here: the central term
//! of [G+_m, G-_n]. The derivation from the OPEs gives
//! (k+1)(2k+3) m(m-1)/2 delta_{m+n,0}, and the Jacobi identity (exercised by
//! the module-level soundness checks) admits only that value; the variant
//! m(m+1)/2 that is sometimes quoted fails both, so the report records which
//! variant actually matches rather than assuming one.

use serde::Serialize;

use crate::error::Result;
use crate::scalars::Scalar;

use super::bracket::BracketEngine;
use super::fields::FieldId;
use super::modes::{ModeExpression, ModeSymbol};

fn sc(text: &str) -> Scalar {
    text.parse().expect("literal scalar")
}

fn kappa() -> Scalar {
    sc("(2k+3)/(3)")
}

/// Central charge of the conformal vector L: c(k) = -4(k+1)(2k+3)/(k+3).
pub fn central_charge_scalar() -> Scalar {
    sc("(-8k^2-20k-12)/(k+3)")
}

/// Which normalization of the [G+_m, G-_n] central term to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GgCentralVariant {
    /// (k+1)(2k+3) m(m-1)/2 — the value forced by the OPE derivation and
    /// the Jacobi identity.
    Derived,
    /// (k+1)(2k+3) m(m+1)/2 — the alternate normalization; kept so the
    /// verifier can demonstrate that it does not match.
    Alternate,
}

/// The closed-form bracket list in display conventions and the L-basis.
pub fn reference_bracket(
    a: FieldId,
    m: i64,
    b: FieldId,
    n: i64,
    gg: GgCentralVariant,
) -> Option<ModeExpression> {
    use FieldId::*;
    let mut e = ModeExpression::zero();
    match (a, b) {
        (J, J) => {
            if m + n == 0 {
                e.add_central(&kappa().scale_rational(&crate::scalars::Rational::from_int(m)));
            }
        }
        (J, GPlus) => e.add_linear(ModeSymbol::new(GPlus, m + n), Scalar::one()),
        (J, GMinus) => e.add_linear(ModeSymbol::new(GMinus, m + n), -Scalar::one()),
        (L, J) => {
            e.add_linear(ModeSymbol::new(J, m + n), Scalar::from_int(-n));
            if m + n == 0 {
                e.add_central(&(&sc("2k+3") * &Scalar::ratio(-(m + 1) * m, 6)));
            }
        }
        (L, GPlus) => e.add_linear(ModeSymbol::new(GPlus, m + n), Scalar::from_int(-n)),
        (L, GMinus) => e.add_linear(ModeSymbol::new(GMinus, m + n), Scalar::from_int(m - n)),
        (L, L) => {
            e.add_linear(ModeSymbol::new(L, m + n), Scalar::from_int(m - n));
            if m + n == 0 {
                let c12 = central_charge_scalar().scale_rational(&crate::scalars::Rational::new(
                    m * (m * m - 1),
                    12,
                ));
                e.add_central(&c12);
            }
        }
        (GPlus, GMinus) => {
            e.add_j_squared(m + n, Scalar::from_int(3));
            let jc = &sc("3k+3").scale_rational(&crate::scalars::Rational::from_int(m))
                - &sc("2k+3").scale_rational(&crate::scalars::Rational::from_int(m + n + 1));
            e.add_linear(ModeSymbol::new(J, m + n), jc);
            e.add_linear(ModeSymbol::new(L, m + n), -sc("k+3"));
            if m + n == 0 {
                let half = match gg {
                    GgCentralVariant::Derived => crate::scalars::Rational::new(m * (m - 1), 2),
                    GgCentralVariant::Alternate => crate::scalars::Rational::new(m * (m + 1), 2),
                };
                e.add_central(&sc("2k^2+5k+3").scale_rational(&half));
            }
        }
        (GPlus, GPlus) | (GMinus, GMinus) => {}
        _ => return None,
    }
    Some(e)
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketCheck {
    pub name: String,
    pub ok: bool,
    pub mismatches: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketReport {
    pub grid: i64,
    pub checks: Vec<BracketCheck>,
    /// True when the m(m-1)/2 normalization of the G+G- central term matches
    /// the OPE-derived bracket on the whole grid.
    pub gg_central_derived_matches: bool,
    /// True when the alternate m(m+1)/2 normalization matches (expected
    /// false; recorded to document the convention that was found).
    pub gg_central_alternate_matches: bool,
    pub antisymmetry_ok: bool,
    pub grading_ok: bool,
    pub conventions: Vec<String>,
    pub ok: bool,
}

/// Compare every listed bracket with the OPE-derived one for all
/// m, n in [-grid, grid], coefficients compared symbolically in k.
pub fn verify_bracket_table(engine: &BracketEngine, grid: i64) -> Result<BracketReport> {
    use FieldId::*;
    let pairs: [(FieldId, FieldId); 9] = [
        (J, J),
        (J, GPlus),
        (J, GMinus),
        (L, J),
        (L, GPlus),
        (L, GMinus),
        (L, L),
        (GPlus, GMinus),
        (GPlus, GPlus),
    ];

    let mut checks = Vec::new();
    let mut all_ok = true;
    for (a, b) in pairs {
        let mut mismatches = Vec::new();
        for m in -grid..=grid {
            for n in -grid..=grid {
                let derived = engine.bracket(ModeSymbol::new(a, m), ModeSymbol::new(b, n))?;
                let reference =
                    reference_bracket(a, m, b, n, GgCentralVariant::Derived).expect("listed pair");
                if derived != reference {
                    mismatches.push([m, n]);
                }
            }
        }
        let ok = mismatches.is_empty();
        all_ok &= ok;
        checks.push(BracketCheck {
            name: format!("[{}_m, {}_n]", a.symbol(), b.symbol()),
            ok,
            mismatches,
        });
    }

    // the G-G- zero bracket, via the swapped-orientation path
    {
        let mut mismatches = Vec::new();
        for m in -grid..=grid {
            for n in -grid..=grid {
                let derived =
                    engine.bracket(ModeSymbol::new(GMinus, m), ModeSymbol::new(GMinus, n))?;
                if !derived.is_zero() {
                    mismatches.push([m, n]);
                }
            }
        }
        let ok = mismatches.is_empty();
        all_ok &= ok;
        checks.push(BracketCheck {
            name: "[G-_m, G-_n]".to_string(),
            ok,
            mismatches,
        });
    }

    // which central normalization does the derivation match?
    let mut derived_matches = true;
    let mut alternate_matches = true;
    for m in -grid..=grid {
        let derived = engine.bracket(ModeSymbol::new(GPlus, m), ModeSymbol::new(GMinus, -m))?;
        let want_d = reference_bracket(GPlus, m, GMinus, -m, GgCentralVariant::Derived).unwrap();
        let want_a = reference_bracket(GPlus, m, GMinus, -m, GgCentralVariant::Alternate).unwrap();
        derived_matches &= derived == want_d;
        alternate_matches &= derived == want_a;
    }

    // antisymmetry: both orders derived independently through the
    // locality swap of the OPE coefficients
    let mut antisymmetry_ok = true;
    let fams = [J, GPlus, GMinus, L];
    for a in fams {
        for b in fams {
            for m in -grid..=grid {
                for n in -grid..=grid {
                    let ab = engine.bracket(ModeSymbol::new(a, m), ModeSymbol::new(b, n))?;
                    let ba = engine.bracket(ModeSymbol::new(b, n), ModeSymbol::new(a, m))?;
                    antisymmetry_ok &= ab == ba.negated();
                }
            }
        }
    }

    // charge and weight bookkeeping: [J_0, A_n] = charge(A) A_n and
    // [L_0, A_n] = -n A_n
    let mut grading_ok = true;
    for a in fams {
        for n in -grid..=grid {
            let jq = engine.bracket(ModeSymbol::new(J, 0), ModeSymbol::new(a, n))?;
            let mut want = ModeExpression::zero();
            want.add_linear(ModeSymbol::new(a, n), Scalar::from_int(a.charge()));
            if a == J && n == 0 {
                want = ModeExpression::zero();
            }
            grading_ok &= jq == want;

            let lw = engine.bracket(ModeSymbol::new(L, 0), ModeSymbol::new(a, n))?;
            let mut want = ModeExpression::zero();
            want.add_linear(ModeSymbol::new(a, n), Scalar::from_int(-n));
            if a == L && n == 0 {
                want = ModeExpression::zero();
            }
            grading_ok &= lw == want;
        }
    }

    all_ok &= derived_matches && antisymmetry_ok && grading_ok;

    let conventions = vec![
        "(J^2)_l expands as sum_{a<=-1} J_a J_{l-a} + sum_{a>=0} J_{l-a} J_a (creation modes left); the derived brackets match with no correction term".to_string(),
        format!(
            "[G+_m, G-_n] central term: (k+1)(2k+3) m(m-1)/2 delta_{{m+n,0}} matches the OPE derivation ({}); the alternate m(m+1)/2 normalization {} and is rejected by the Jacobi identity",
            if derived_matches { "confirmed" } else { "NOT confirmed" },
            if alternate_matches { "also matches" } else { "does not match" },
        ),
        "JJ operator product read with (z-w)^2 in the double pole (misprint corrected); bracket list symbols G_n, F_n read as G+_n, G-_n".to_string(),
    ];

    Ok(BracketReport {
        grid,
        checks,
        gg_central_derived_matches: derived_matches,
        gg_central_alternate_matches: alternate_matches,
        antisymmetry_ok,
        grading_ok,
        conventions,
        ok: all_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_table_verifies_on_grid_three() {
        let engine = BracketEngine::new();
        let report = verify_bracket_table(&engine, 3).unwrap();
        for c in &report.checks {
            assert!(c.ok, "{} mismatched at {:?}", c.name, c.mismatches);
        }
        assert!(report.antisymmetry_ok);
        assert!(report.grading_ok);
        assert!(report.gg_central_derived_matches);
        assert!(
            !report.gg_central_alternate_matches,
            "the m(m+1)/2 normalization should not match the OPE derivation"
        );
        assert!(report.ok);
    }

    #[test]
    fn virasoro_central_term_examples() {
        let engine = BracketEngine::new();
        // [L_2, L_{-2}] = 4 L_0 + c(k)/2
        let e = engine
            .bracket(ModeSymbol::new(FieldId::L, 2), ModeSymbol::new(FieldId::L, -2))
            .unwrap();
        assert_eq!(e.coeff(&ModeSymbol::new(FieldId::L, 0)), Scalar::from_int(4));
        assert_eq!(
            e.central,
            central_charge_scalar().scale_rational(&crate::scalars::Rational::new(1, 2))
        );
    }

    #[test]
    fn gplus_gminus_central_on_antidiagonal() {
        let engine = BracketEngine::new();
        // [G+_2, G-_{-2}] central: (k+1)(2k+3) * 2*1/2 = (k+1)(2k+3)
        let e = engine
            .bracket(
                ModeSymbol::new(FieldId::GPlus, 2),
                ModeSymbol::new(FieldId::GMinus, -2),
            )
            .unwrap();
        assert_eq!(e.central, sc("2k^2+5k+3"));
        // and at m = -1: (-1)(-2)/2 = 1
        let e = engine
            .bracket(
                ModeSymbol::new(FieldId::GPlus, -1),
                ModeSymbol::new(FieldId::GMinus, 1),
            )
            .unwrap();
        assert_eq!(e.central, sc("2k^2+5k+3"));
    }
}
