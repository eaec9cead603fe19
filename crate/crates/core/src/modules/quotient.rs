//! Iterated singular-vector quotienting.
//!
//! The maximal graded submodule is captured inside a finite window by a
//! fixpoint: find every vector of the current quotient annihilated by all
//! raising modes (minimal depths first, extremal charges first), add the
//! window part of the submodule each one generates, quotient, repeat. A
//! minimal-depth extremal-charge survivor of the maximal submodule is
//! singular in the current quotient, so the iteration also reaches
//! subsingular vectors. Per-block dimensions of the fixpoint are the graded
//! dimensions of the simple quotient within the window (boundary-charge
//! blocks whose raising constraints would leave the window are not searched
//! and keep upper-bound dimensions).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::{kernel, Subspace};
use crate::ope::{FieldId, ModeSymbol};
use crate::scalars::Scalar;

use super::context::{ModuleContext, Truncation};
use super::pbw::{enumerate_block, GradedVector, ModuleKind, PbwMonomial};

pub type Block = (i64, i64);

#[derive(Clone, Debug)]
pub struct BlockState {
    pub monomials: Vec<PbwMonomial>,
    /// Window part of the accumulated maximal-submodule image, as a reduced
    /// echelon subspace in block coordinates.
    pub sub: Subspace,
}

impl BlockState {
    fn dim_quotient(&self) -> usize {
        self.monomials.len() - self.sub.dim()
    }
}

/// One singular vector found during the fixpoint.
#[derive(Clone, Debug, Serialize)]
pub struct SingularRecord {
    pub charge: i64,
    pub depth: i64,
    pub sweep: usize,
    /// Leading monomial of the representative (for reporting).
    pub leading: String,
}

#[derive(Clone, Debug)]
pub struct QuotientState {
    pub trunc: Truncation,
    pub blocks: BTreeMap<Block, BlockState>,
    pub iterations: usize,
    pub singulars: Vec<SingularRecord>,
    /// Dimension history per sweep, used by the monotonicity invariant.
    pub dim_history: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BlockDim {
    pub charge: i64,
    pub depth: i64,
    pub dim: usize,
}

impl QuotientState {
    pub fn block(&self, b: Block) -> Option<&BlockState> {
        self.blocks.get(&b)
    }

    pub fn dim(&self, b: Block) -> usize {
        self.blocks.get(&b).map_or(0, BlockState::dim_quotient)
    }

    /// All block dimensions sorted by (depth, charge).
    pub fn dims(&self) -> Vec<BlockDim> {
        let mut out: Vec<BlockDim> = self
            .blocks
            .iter()
            .map(|(&(charge, depth), st)| BlockDim {
                charge,
                depth,
                dim: st.dim_quotient(),
            })
            .collect();
        out.sort_by_key(|b| (b.depth, b.charge));
        out
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(BlockState::dim_quotient).sum()
    }
}

/// The raising modes used to test singularity at a block of the given depth:
/// everything of positive depth up to d, plus G-_0.
fn raising_modes(depth: i64) -> Vec<ModeSymbol> {
    let mut out = Vec::new();
    out.push(ModeSymbol::new(FieldId::GMinus, 0));
    for n in 1..=depth {
        out.push(ModeSymbol::new(FieldId::J, n));
        out.push(ModeSymbol::new(FieldId::L, n));
        out.push(ModeSymbol::new(FieldId::GPlus, n));
        out.push(ModeSymbol::new(FieldId::GMinus, n));
    }
    out
}

/// A block is searchable when every raising constraint with a target of
/// nonnegative depth stays inside the charge window, so singularity can be
/// certified rather than guessed.
fn searchable(block: Block, trunc: &Truncation) -> bool {
    let (a, d) = block;
    if block == (0, 0) {
        return false;
    }
    if a - 1 < -trunc.charge_window {
        return false; // G-_0 target leaves the window
    }
    if d >= 1 && a + 1 > trunc.charge_window {
        return false; // G+_n targets leave the window
    }
    true
}

/// Sweep order: minimal depth first, then extremal (largest |charge|) first,
/// positive side before negative on ties.
fn sweep_order(blocks: &BTreeMap<Block, BlockState>, reverse_charge: bool) -> Vec<Block> {
    let mut order: Vec<Block> = blocks
        .iter()
        .filter(|(_, st)| !st.monomials.is_empty())
        .map(|(&b, _)| b)
        .collect();
    order.sort_by_key(|&(a, d)| (d, -(a.abs()), if reverse_charge { a } else { -a }));
    order
}

#[derive(Default)]
pub struct QuotientOptions {
    pub reverse_charge_order: bool,
}


/// Exact kernel of the joint raising action on one block of the current
/// quotient: coordinate vectors v with act(r, v) inside the accumulated
/// submodule for every raising mode r.
pub fn singular_in_block(
    ctx: &ModuleContext,
    blocks: &BTreeMap<Block, BlockState>,
    block: Block,
) -> Vec<Vec<Scalar>> {
    let (a, d) = block;
    let st = &blocks[&block];
    let n = st.monomials.len();
    let mut constraints: Vec<Vec<Scalar>> = Vec::new();
    for r in raising_modes(d) {
        let target = (a + r.charge_offset(), d + r.depth_offset());
        if target.1 < 0 {
            continue; // the action into negative depth vanishes identically
        }
        let tb = &blocks[&target];
        if tb.monomials.is_empty() {
            continue;
        }
        // residual coordinates of each basis image modulo the submodule
        let mut residuals: Vec<Vec<Scalar>> = Vec::with_capacity(n);
        for mono in &st.monomials {
            let img = ctx.act(r, &GradedVector::from_monomial(mono.clone(), Scalar::one()));
            let coords = img
                .to_coords(&tb.monomials)
                .expect("homogeneous action lands in the target block");
            residuals.push(tb.sub.reduce(&coords));
        }
        for i in 0..tb.monomials.len() {
            if residuals.iter().all(|r| r[i].is_zero()) {
                continue;
            }
            let row: Vec<Scalar> = residuals.iter().map(|r| r[i].clone()).collect();
            constraints.push(row);
        }
    }
    kernel(n, &constraints)
}

/// Close the accumulated submodule under the algebra action: insert the span
/// of all lowering words applied to a fresh singular vector, for every
/// window block it can reach. Spanning words always use the Verma-type
/// lowering ranges; inside a vacuum module the extra modes (G-_{-1}, L_{-1})
/// act perfectly well on non-cyclic vectors and are needed to span.
fn close_submodule(
    ctx: &ModuleContext,
    blocks: &mut BTreeMap<Block, BlockState>,
    source: Block,
    vector: &GradedVector,
    trunc: &Truncation,
) {
    let (a0, d0) = source;
    let targets: Vec<Block> = blocks.keys().copied().collect();
    for (a, d) in targets {
        if d < d0 || blocks[&(a, d)].monomials.is_empty() {
            continue;
        }
        if !trunc.contains(a, d) {
            continue;
        }
        let words = enumerate_block(ModuleKind::Verma, a - a0, d - d0);
        if words.is_empty() {
            continue;
        }
        let mut new_rows: Vec<Vec<Scalar>> = Vec::new();
        {
            let tb = &blocks[&(a, d)];
            for w in &words {
                let img = ctx.act_word(w, vector);
                if img.is_zero() {
                    continue;
                }
                let coords = img
                    .to_coords(&tb.monomials)
                    .expect("homogeneous word lands in the target block");
                new_rows.push(coords);
            }
        }
        let tb = blocks.get_mut(&(a, d)).unwrap();
        for row in new_rows {
            tb.sub.insert(&row);
        }
    }
}

/// Run the singular-vector quotient fixpoint inside the window.
pub fn iterate_quotient(ctx: &ModuleContext, trunc: Truncation) -> QuotientState {
    iterate_quotient_with(ctx, trunc, &QuotientOptions::default())
}

pub fn iterate_quotient_with(
    ctx: &ModuleContext,
    trunc: Truncation,
    opts: &QuotientOptions,
) -> QuotientState {
    let mut blocks: BTreeMap<Block, BlockState> = BTreeMap::new();
    for charge in -trunc.charge_window..=trunc.charge_window {
        for depth in 0..=trunc.max_depth {
            let monomials = enumerate_block(ctx.kind(), charge, depth);
            let dim = monomials.len();
            blocks.insert(
                (charge, depth),
                BlockState {
                    monomials,
                    sub: Subspace::new(dim),
                },
            );
        }
    }

    let mut singulars: Vec<SingularRecord> = Vec::new();
    let mut iterations = 0usize;
    let mut dim_history = Vec::new();
    loop {
        iterations += 1;
        let mut found = false;
        for block in sweep_order(&blocks, opts.reverse_charge_order) {
            if !searchable(block, &trunc) {
                continue;
            }
            if blocks[&block].dim_quotient() == 0 {
                continue;
            }
            let kernel_vectors = singular_in_block(ctx, &blocks, block);
            for kv in kernel_vectors {
                let red = blocks[&block].sub.reduce(&kv);
                if red.iter().all(Scalar::is_zero) {
                    continue;
                }
                found = true;
                let vector = GradedVector::from_coords(&blocks[&block].monomials, &red);
                let leading = vector
                    .terms()
                    .last()
                    .map(|(m, _)| m.to_string())
                    .unwrap_or_default();
                singulars.push(SingularRecord {
                    charge: block.0,
                    depth: block.1,
                    sweep: iterations,
                    leading,
                });
                close_submodule(ctx, &mut blocks, block, &vector, &trunc);
            }
        }
        let total: usize = blocks.values().map(BlockState::dim_quotient).sum();
        dim_history.push(total);
        if !found {
            break;
        }
    }

    QuotientState {
        trunc,
        blocks,
        iterations,
        singulars,
        dim_history,
    }
}

/// Certified dimension of the depth-0 part of the simple quotient, or
/// Inconclusive when the window cannot rule out a larger top space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TopDimension {
    Exact(u32),
    Inconclusive,
}

pub fn top_dimension(state: &QuotientState) -> TopDimension {
    let c = state.trunc.charge_window;
    let mut dim = 0u32;
    for a in 0..=c {
        match state.dim((a, 0)) {
            0 => return TopDimension::Exact(dim),
            _ => dim += 1,
        }
    }
    TopDimension::Inconclusive
}

/// The null-vector membership report for the vacuum module at level p.
#[derive(Clone, Debug, Serialize)]
pub struct NullVectorReport {
    pub monomial: String,
    pub in_maximal_submodule: bool,
    pub certificate_depth: i64,
    /// Quotient dimension of the mirror block (charge -(p-2), depth 2(p-2))
    /// when it fits in the window; None means out of window (inconclusive).
    pub gminus_block_dim: Option<usize>,
}

pub fn null_vector_report(state: &QuotientState, p: u64) -> NullVectorReport {
    let e = p as i64 - 2;
    let mono = PbwMonomial::power(ModeSymbol::new(FieldId::GPlus, -1), e as u32);
    let block = (e, e);
    let in_max = state
        .block(block)
        .map(|st| {
            mono.to_string();
            let coords = GradedVector::from_monomial(mono.clone(), Scalar::one())
                .to_coords(&st.monomials)
                .expect("the null-vector monomial is a basis element of its block");
            st.sub.contains(&coords)
        })
        .unwrap_or(false);
    let certificate_depth = state.singulars.iter().map(|s| s.depth).max().unwrap_or(0);
    let mirror = (-e, 2 * e);
    let gminus_block_dim = if state.trunc.contains(mirror.0, mirror.1) {
        Some(state.dim(mirror))
    } else {
        None
    };
    NullVectorReport {
        monomial: format!("(G+_{{-1}})^{}", e),
        in_maximal_submodule: in_max,
        certificate_depth,
        gminus_block_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;
    use crate::weights::{xi_chi, HighestWeight, Level};

    fn verma_at(p: u64, i: u32, j: u32) -> ModuleContext {
        let level = Level::new(p).unwrap();
        let hw = xi_chi(i, j, &level.k_scalar());
        ModuleContext::new(ModuleKind::Verma, hw, Some(level.k)).unwrap()
    }

    #[test]
    fn generic_weight_has_no_singular_vectors_to_depth_two() {
        // random-looking rational weight with all h_i != 0 for i <= 6
        let xi = Scalar::ratio(3, 7);
        let chi = Scalar::ratio(5, 11);
        let k = Rational::new(1, 3);
        for i in 1..=6 {
            let h = crate::weights::h_fun(i, &xi, &chi, &Scalar::variable())
                .unwrap()
                .specialize(&k)
                .unwrap();
            assert!(!h.is_zero(), "weight accidentally degenerate at i = {i}");
        }
        let ctx = ModuleContext::new(
            ModuleKind::Verma,
            HighestWeight::new(xi, chi),
            Some(k),
        )
        .unwrap();
        let state = iterate_quotient(&ctx, Truncation::new(2, 4));
        assert_eq!(state.singulars.len(), 0);
        // quotient equals the Verma module up to depth 2
        for ((_, _), st) in state.blocks.iter() {
            assert_eq!(st.sub.dim(), 0);
        }
        assert_eq!(state.iterations, 1);
    }

    #[test]
    fn p3_vacuum_collapses_to_one_dimension() {
        let ctx = ModuleContext::vacuum(Rational::new(-3, 2)).unwrap();
        let state = iterate_quotient(&ctx, Truncation::new(4, 5));
        for (&(a, d), st) in state.blocks.iter() {
            let want = usize::from((a, d) == (0, 0));
            assert_eq!(st.dim_quotient(), want, "block ({a}, {d})");
        }
        // the depth-1 singular vector J_{-1}|0> is found on the first sweep
        assert!(state
            .singulars
            .iter()
            .any(|s| (s.charge, s.depth) == (0, 1)));
        // the one-dimensional algebra has a one-dimensional top space
        assert_eq!(top_dimension(&state), TopDimension::Exact(1));
    }

    #[test]
    fn p5_vacuum_null_vector_at_charge_three() {
        let ctx = ModuleContext::vacuum(Rational::new(-1, 2)).unwrap();
        let state = iterate_quotient(&ctx, Truncation::new(3, 5));
        assert_eq!(state.dim((3, 3)), 0, "(G+_{{-1}})^3 must die");
        let report = null_vector_report(&state, 5);
        assert!(report.in_maximal_submodule);
        assert!(report.certificate_depth <= 3);
        // the generators J_{-1}, G+-, L_{-2} survive: the algebra is nontrivial
        assert_eq!(state.dim((0, 1)), 1);
        assert_eq!(state.dim((1, 1)), 1);
        assert_eq!(state.dim((-1, 2)), 1);
    }

    #[test]
    fn generic_level_vacuum_is_free_to_depth_four() {
        // k = 7/5 avoids the degenerate levels (half-integers are the
        // exceptional family, and e.g. k = 1 and k = 2 carry charge-3
        // null vectors of their own)
        let ctx = ModuleContext::vacuum(Rational::new(7, 5)).unwrap();
        let state = iterate_quotient(&ctx, Truncation::new(4, 5));
        assert!(state.singulars.is_empty());
        for charge in -5..=5 {
            for d in 0..=4 {
                assert_eq!(
                    state.dim((charge, d)),
                    enumerate_block(ModuleKind::Vacuum, charge, d).len()
                );
            }
        }
    }

    #[test]
    fn top_dimensions_at_p_five() {
        for (i, j) in [(1u32, 1u32), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)] {
            let ctx = verma_at(5, i, j);
            let state = iterate_quotient(&ctx, Truncation::new(2, 5));
            assert_eq!(
                top_dimension(&state),
                TopDimension::Exact(i),
                "(i, j) = ({i}, {j})"
            );
        }
    }

    #[test]
    fn quotient_dims_are_order_independent_and_monotone() {
        let ctx = verma_at(5, 2, 1);
        let trunc = Truncation::new(3, 4);
        let forward = iterate_quotient(&ctx, trunc);
        let reversed = iterate_quotient_with(
            &ctx,
            trunc,
            &QuotientOptions {
                reverse_charge_order: true,
            },
        );
        assert_eq!(forward.dims(), reversed.dims());
        for w in forward.dim_history.windows(2) {
            assert!(w[1] <= w[0], "dimensions must not grow across sweeps");
        }
    }
}
