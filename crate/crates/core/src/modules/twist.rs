//! Twisting a computed simple quotient by the spectral flow: the same
//! underlying space with the action precomposed by psi^s, and a search for
//! the highest-weight vector of the twisted module inside the window.

use serde::Serialize;

use crate::linalg::kernel;
use crate::ope::{flow_mode_power, FieldId, ModeSymbol};
use crate::scalars::{Rational, Scalar};
use crate::weights::HighestWeight;

use super::context::ModuleContext;
use super::pbw::GradedVector;
use super::quotient::{Block, QuotientState};

#[derive(Clone, Debug, Serialize)]
pub enum TwistOutcome {
    /// The unique highest-weight vector of the twisted module in the window,
    /// with its (xi', chi') and the block it was found in.
    Found {
        weight: HighestWeight,
        block: [i64; 2],
    },
    /// No certified candidate (window too small) or no unique minimum.
    Inconclusive { reason: String },
}

/// The twisted raising modes at a block of depth d: psi^s(r) for r in the
/// raising set, keeping only those whose target depth is nonnegative.
/// Returns (original mode, power) pairs resolved to mode expressions.
fn twisted_raising(depth: i64, power: u32) -> Vec<ModeSymbol> {
    let s = power as i64;
    let mut out = Vec::new();
    for n in 1..=depth {
        out.push(ModeSymbol::new(FieldId::J, n));
        out.push(ModeSymbol::new(FieldId::L, n));
    }
    // psi^s(G+_n) = G+_{n-s}: target depth d - n + s >= 0
    for n in 1..=(depth + s) {
        out.push(ModeSymbol::new(FieldId::GPlus, n));
    }
    // psi^s(G-_n) = G-_{n+s}: target depth d - n - s >= 0
    for n in 0..=(depth - s) {
        out.push(ModeSymbol::new(FieldId::GMinus, n));
    }
    out
}

/// Locate the highest-weight vector of the psi^s-twist of the computed
/// simple quotient. The weight returned is exact; the search is certified
/// only within the window, so a missing or ambiguous candidate reports
/// Inconclusive rather than a guess.
pub fn twist_module(ctx: &ModuleContext, state: &QuotientState, power: u32) -> TwistOutcome {
    let Some(k0) = ctx.level().cloned() else {
        return TwistOutcome::Inconclusive {
            reason: "twisting requires a concrete rational level".into(),
        };
    };
    let s = power as i64;
    let kappa = "(2k+3)/(3)"
        .parse::<Scalar>()
        .unwrap()
        .specialize(&k0)
        .unwrap();
    let xi0 = ctx.highest_weight().xi.specialize(&k0).unwrap();
    let chi0 = ctx.highest_weight().chi.specialize(&k0).unwrap();

    let mut best: Option<(Rational, Rational, Block, usize)> = None; // (chi', xi', block, count at min)
    for (&block, st) in state.blocks.iter() {
        let (a, d) = block;
        if st.monomials.is_empty() || state.dim(block) == 0 {
            continue;
        }
        // all twisted raising constraints must stay in the window
        let mut constraints: Vec<Vec<Scalar>> = Vec::new();
        let mut verifiable = true;
        for r in twisted_raising(d, power) {
            let q = r.charge_offset();
            let target = (a + q, d - r.index + s * q);
            if target.1 < 0 {
                continue;
            }
            if !state.trunc.contains(target.0, target.1) {
                verifiable = false;
                break;
            }
            let twisted = flow_mode_power(r, power).expect("generator modes flow");
            let tb = &state.blocks[&target];
            let mut residuals: Vec<Vec<Scalar>> = Vec::new();
            for mono in &st.monomials {
                // psi^s of a raising mode has no central part (the deltas sit
                // at index 0 only), so the image is block-homogeneous
                let img = ctx.apply_expression(
                    &twisted,
                    &GradedVector::from_monomial(mono.clone(), Scalar::one()),
                );
                let coords = img
                    .to_coords(&tb.monomials)
                    .expect("twisted action is block-homogeneous");
                residuals.push(tb.sub.reduce(&coords));
            }
            for i in 0..tb.monomials.len() {
                if residuals.iter().all(|r| r[i].is_zero()) {
                    continue;
                }
                constraints.push(residuals.iter().map(|r| r[i].clone()).collect());
            }
        }
        if !verifiable {
            continue;
        }
        for kv in kernel(st.monomials.len(), &constraints) {
            let red = st.sub.reduce(&kv);
            if red.iter().all(Scalar::is_zero) {
                continue;
            }
            // twisted eigenvalues on this block
            let a_r = Rational::from_int(a);
            let d_r = Rational::from_int(d);
            let s_r = Rational::from_int(s);
            let xi_abs = &xi0 + &a_r;
            let xi_new = &xi_abs - &(&s_r * &kappa);
            let chi_new = &(&(&chi0 + &d_r) - &(&s_r * &xi_abs))
                + &(&Rational::new(s * (s + 1), 2) * &kappa);
            match &mut best {
                None => best = Some((chi_new, xi_new, block, 1)),
                Some((c, x, bl, count)) => {
                    if chi_new < *c {
                        *c = chi_new;
                        *x = xi_new;
                        *bl = block;
                        *count = 1;
                    } else if chi_new == *c && (xi_new != *x || *bl != block) {
                        *count += 1;
                    }
                }
            }
        }
    }

    match best {
        None => TwistOutcome::Inconclusive {
            reason: "no twisted highest-weight vector found in the window".into(),
        },
        Some((_, _, _, count)) if count > 1 => TwistOutcome::Inconclusive {
            reason: "twisted highest weight not unique in the window".into(),
        },
        Some((chi, xi, block, _)) => TwistOutcome::Found {
            weight: HighestWeight::new(
                Scalar::from_rational(xi),
                Scalar::from_rational(chi),
            ),
            block: [block.0, block.1],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::context::Truncation;
    use crate::modules::pbw::ModuleKind;
    use crate::modules::quotient::iterate_quotient;
    use crate::weights::{flow_weight, xi_chi, Level};

    fn simple_quotient(p: u64, i: u32, j: u32, trunc: Truncation) -> (ModuleContext, QuotientState) {
        let level = Level::new(p).unwrap();
        let hw = xi_chi(i, j, &level.k_scalar());
        let ctx = ModuleContext::new(ModuleKind::Verma, hw, Some(level.k)).unwrap();
        let state = iterate_quotient(&ctx, trunc);
        (ctx, state)
    }

    #[test]
    fn twist_of_l_two_thirds_is_the_vacuum_weight() {
        let (ctx, state) = simple_quotient(5, 1, 1, Truncation::new(3, 4));
        match twist_module(&ctx, &state, 1) {
            TwistOutcome::Found { weight, .. } => {
                assert!(weight.xi.is_zero());
                assert!(weight.chi.is_zero());
            }
            TwistOutcome::Inconclusive { reason } => panic!("inconclusive: {reason}"),
        }
    }

    #[test]
    fn twist_of_vacuum_weight_module() {
        // L(0,0) = the (1, 3) label at p = 5, top dimension 1:
        // twisted weight (-2/3, 2/3) at k = -1/2
        let (ctx, state) = simple_quotient(5, 1, 3, Truncation::new(3, 4));
        match twist_module(&ctx, &state, 1) {
            TwistOutcome::Found { weight, .. } => {
                assert_eq!(weight.xi, Scalar::ratio(-2, 3));
                assert_eq!(weight.chi, Scalar::ratio(2, 3));
            }
            TwistOutcome::Inconclusive { reason } => panic!("inconclusive: {reason}"),
        }
    }

    #[test]
    fn double_twist_composes_the_weight_map() {
        // p = 5, (i, j) = (1, 1): psi gives (0,0) with top dimension j = 1;
        // psi^2 must match flowing twice
        let (ctx, state) = simple_quotient(5, 1, 1, Truncation::new(4, 5));
        let level = Level::new(5).unwrap();
        let hw = xi_chi(1, 1, &level.k_scalar());
        let once = flow_weight(&hw, 1, &level.k_scalar());
        let twice = flow_weight(&once, 1, &level.k_scalar());
        match twist_module(&ctx, &state, 2) {
            TwistOutcome::Found { weight, .. } => {
                assert_eq!(weight.xi, twice.xi);
                assert_eq!(weight.chi, twice.chi);
            }
            TwistOutcome::Inconclusive { reason } => panic!("inconclusive: {reason}"),
        }
    }
}
