//! Benchmarks of the three hot paths: symbolic bracket derivation, the
//! closed-form weight table, and the module quotient fixpoint.

use criterion::{criterion_group, criterion_main, Criterion};

use bp_core::modules::{iterate_quotient, ModuleContext, Truncation};
use bp_core::ope::{verify_bracket_table, BracketEngine, FieldId, ModeSymbol};
use bp_core::scalars::Rational;
use bp_core::weights::enumerate_simples;

fn bracket_derivation(c: &mut Criterion) {
    let engine = BracketEngine::new();
    c.bench_function("bracket_gplus_gminus_grid3", |b| {
        b.iter(|| {
            for m in -3..=3i64 {
                for n in -3..=3i64 {
                    let e = engine
                        .bracket(
                            ModeSymbol::new(FieldId::GPlus, m),
                            ModeSymbol::new(FieldId::GMinus, n),
                        )
                        .unwrap();
                    std::hint::black_box(e);
                }
            }
        })
    });
    c.bench_function("verify_bracket_table_grid2", |b| {
        b.iter(|| std::hint::black_box(verify_bracket_table(&engine, 2).unwrap()))
    });
}

fn weight_tables(c: &mut Criterion) {
    c.bench_function("enumerate_simples_p9", |b| {
        b.iter(|| std::hint::black_box(enumerate_simples(9).unwrap()))
    });
}

fn quotient_fixpoint(c: &mut Criterion) {
    c.bench_function("p5_vacuum_quotient_d3", |b| {
        b.iter(|| {
            let ctx = ModuleContext::vacuum(Rational::new(-1, 2)).unwrap();
            std::hint::black_box(iterate_quotient(&ctx, Truncation::new(3, 5)))
        })
    });
}

criterion_group!(benches, bracket_derivation, weight_tables, quotient_fixpoint);
criterion_main!(benches);
