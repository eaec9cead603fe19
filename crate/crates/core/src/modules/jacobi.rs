//! Bracket soundness on modules: for mode pairs (A_m, B_n) and vectors v,
//!
//!   act(A_m, act(B_n, v)) - act(B_n, act(A_m, v)) = act([A_m, B_n], v),
//!
//! with the right side expanded through the derived bracket expression
//! (including the normal-ordered (J^2) modes). Running this over all
//! generator pairs on an index grid exercises the Jacobi/associativity data
//! of the OPE at desk scale: a wrong structure constant anywhere breaks it.

use serde::Serialize;

use crate::ope::{BracketEngine, FieldId, ModeSymbol};
use crate::rng::SplitMix64;
use crate::scalars::{Rational, Scalar};
use crate::weights::HighestWeight;

use super::context::ModuleContext;
use super::pbw::{enumerate_block, GradedVector, ModuleKind};

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub grid: i64,
    pub symbolic_pairs_checked: usize,
    pub specialized_pairs_checked: usize,
    pub vectors_per_pair: usize,
    pub levels: Vec<Rational>,
    pub failures: Vec<String>,
    pub ok: bool,
}

fn random_vector(rng: &mut SplitMix64, max_depth: i64) -> GradedVector {
    let mut pool = Vec::new();
    for charge in -2..=2 {
        for depth in 0..=max_depth {
            pool.extend(enumerate_block(ModuleKind::Verma, charge, depth));
        }
    }
    let mut v = GradedVector::zero();
    for _ in 0..3 {
        let m = pool[rng.below(pool.len() as u64) as usize].clone();
        v.add_term(m, Scalar::from_int(rng.small_int(3, true)));
    }
    if v.is_zero() {
        v = GradedVector::cyclic();
    }
    v
}

fn random_weight(rng: &mut SplitMix64) -> HighestWeight {
    HighestWeight::new(
        Scalar::from_rational(Rational::new(rng.small_int(6, false), 3)),
        Scalar::from_rational(Rational::new(rng.small_int(6, false), 2)),
    )
}

fn check_pair(
    ctx: &ModuleContext,
    engine: &BracketEngine,
    a: ModeSymbol,
    b: ModeSymbol,
    vectors: &[GradedVector],
    failures: &mut Vec<String>,
) {
    let bracket = engine.bracket(a, b).expect("generator bracket");
    for (vi, v) in vectors.iter().enumerate() {
        let ab = ctx.act(a, &ctx.act(b, v));
        let ba = ctx.act(b, &ctx.act(a, v));
        let mut lhs = ab;
        lhs.add_scaled(&ba, &-Scalar::one());
        let rhs = ctx.apply_expression(&bracket, v);
        if lhs != rhs {
            failures.push(format!("[{a}, {b}] on vector #{vi}"));
        }
    }
}

/// Run the soundness sweep. Pairs without a (J^2) term are checked at
/// symbolic k; the G+/G- pairs are checked at each provided rational level
/// (and must be checked somewhere, since the (J^2) expansion only enters
/// there).
pub fn verify_module_jacobi(
    grid: i64,
    seed: u64,
    levels: &[Rational],
    vectors_per_pair: usize,
) -> JacobiReport {
    let engine = BracketEngine::new();
    let mut rng = SplitMix64::new(seed);
    let mut failures = Vec::new();

    let fams = [FieldId::J, FieldId::L, FieldId::GPlus, FieldId::GMinus];
    let is_gg = |a: FieldId, b: FieldId| {
        matches!(
            (a, b),
            (FieldId::GPlus, FieldId::GMinus) | (FieldId::GMinus, FieldId::GPlus)
        )
    };

    let hw = random_weight(&mut rng);
    let sym_ctx = ModuleContext::new(ModuleKind::Verma, hw.clone(), None).expect("symbolic level");
    let vectors: Vec<GradedVector> = (0..vectors_per_pair)
        .map(|_| random_vector(&mut rng, 3))
        .collect();

    let mut symbolic_pairs = 0usize;
    let mut specialized_pairs = 0usize;
    for fa in fams {
        for fb in fams {
            for m in -grid..=grid {
                for n in -grid..=grid {
                    let a = ModeSymbol::new(fa, m);
                    let b = ModeSymbol::new(fb, n);
                    if is_gg(fa, fb) {
                        continue;
                    }
                    symbolic_pairs += 1;
                    check_pair(&sym_ctx, &engine, a, b, &vectors, &mut failures);
                }
            }
        }
    }

    for k0 in levels {
        let ctx = ModuleContext::new(ModuleKind::Verma, hw.clone(), Some(k0.clone()))
            .expect("rational level away from -3");
        for (fa, fb) in [
            (FieldId::GPlus, FieldId::GMinus),
            (FieldId::GMinus, FieldId::GPlus),
        ] {
            for m in -grid..=grid {
                for n in -grid..=grid {
                    specialized_pairs += 1;
                    check_pair(
                        &ctx,
                        &engine,
                        ModeSymbol::new(fa, m),
                        ModeSymbol::new(fb, n),
                        &vectors,
                        &mut failures,
                    );
                }
            }
        }
    }

    let ok = failures.is_empty();
    JacobiReport {
        grid,
        symbolic_pairs_checked: symbolic_pairs,
        specialized_pairs_checked: specialized_pairs,
        vectors_per_pair,
        levels: levels.to_vec(),
        failures,
        ok,
    }
}

/// Deterministic default levels for the specialized G+/G- sweep: rational,
/// away from poles and from the small degenerate set.
pub fn default_jacobi_levels() -> Vec<Rational> {
    vec![
        Rational::new(7, 5),
        Rational::new(-8, 3),
        Rational::new(13, 4),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_soundness() {
        let report = verify_module_jacobi(1, 0xBADC0FFE, &[Rational::new(7, 5)], 1);
        assert!(report.ok, "failures: {:?}", report.failures);
        assert!(report.symbolic_pairs_checked > 0);
        assert!(report.specialized_pairs_checked > 0);
    }
}
