//! PBW monomials and graded vectors.
//!
//! A monomial is an ordered list of lowering modes applied to the cyclic
//! vector. The fixed total order sorts factors by family rank J < L < G- < G+
//! and then by index ascending (deepest modes leftmost), which keeps G+_0
//! rightmost so top-space vectors are literally trailing powers of G+_0.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::ope::{FieldId, ModeSymbol};
use crate::scalars::Scalar;

/// Module species: Verma-type (free top space, G+_0 acts as a lowering
/// operator) or vacuum-type (regularity kills G+_0, L_{-1}, G-_{-1}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Verma,
    Vacuum,
}

impl ModuleKind {
    /// The free lowering set defining the PBW basis of this module kind.
    pub fn is_lowering(self, mode: ModeSymbol) -> bool {
        match self {
            ModuleKind::Verma => match mode.family {
                FieldId::J | FieldId::L | FieldId::GMinus => mode.index <= -1,
                FieldId::GPlus => mode.index <= 0,
                _ => false,
            },
            ModuleKind::Vacuum => match mode.family {
                FieldId::J | FieldId::GPlus => mode.index <= -1,
                FieldId::GMinus | FieldId::L => mode.index <= -2,
                _ => false,
            },
        }
    }
}

/// Sort key of a factor inside a monomial.
pub fn pbw_key(mode: &ModeSymbol) -> (u8, i64) {
    let rank = match mode.family {
        FieldId::J => 0,
        FieldId::L => 1,
        FieldId::GMinus => 2,
        FieldId::GPlus => 3,
        other => unreachable!("{other} cannot appear in a PBW monomial"),
    };
    (rank, mode.index)
}

/// An ordered product of lowering modes; the rightmost factor acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwMonomial {
    factors: Vec<ModeSymbol>,
}

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial {
            factors: Vec::new(),
        }
    }

    pub fn from_factors(factors: Vec<ModeSymbol>) -> Self {
        debug_assert!(
            factors.windows(2).all(|w| pbw_key(&w[0]) <= pbw_key(&w[1])),
            "factors out of canonical order"
        );
        PbwMonomial { factors }
    }

    /// The i-th power of a single mode.
    pub fn power(mode: ModeSymbol, exp: u32) -> Self {
        PbwMonomial {
            factors: vec![mode; exp as usize],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[ModeSymbol] {
        &self.factors
    }

    pub fn split_head(&self) -> Option<(ModeSymbol, PbwMonomial)> {
        let (&head, tail) = self.factors.split_first()?;
        Some((
            head,
            PbwMonomial {
                factors: tail.to_vec(),
            },
        ))
    }

    /// Prepend a factor that is already canonical at the front.
    pub fn prepend(&self, mode: ModeSymbol) -> PbwMonomial {
        debug_assert!(self
            .factors
            .first()
            .is_none_or(|f| pbw_key(&mode) <= pbw_key(f)));
        let mut factors = Vec::with_capacity(self.factors.len() + 1);
        factors.push(mode);
        factors.extend_from_slice(&self.factors);
        PbwMonomial { factors }
    }

    /// Charge offset above the cyclic vector.
    pub fn charge(&self) -> i64 {
        self.factors.iter().map(|f| f.charge_offset()).sum()
    }

    /// Depth (L_0-grade) offset above the cyclic vector; nonnegative for
    /// lowering factors.
    pub fn depth(&self) -> i64 {
        self.factors.iter().map(|f| f.depth_offset()).sum()
    }

    pub fn block(&self) -> (i64, i64) {
        (self.charge(), self.depth())
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.factors.iter().map(pbw_key);
        let b = other.factors.iter().map(pbw_key);
        a.cmp(b)
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            let count = j - i;
            if count == 1 {
                parts.push(format!("{}", self.factors[i]));
            } else {
                parts.push(format!("({})^{}", self.factors[i], count));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite Scalar-linear combination of PBW monomials applied to the cyclic
/// vector. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedVector {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl GradedVector {
    pub fn zero() -> Self {
        GradedVector::default()
    }

    pub fn cyclic() -> Self {
        GradedVector::from_monomial(PbwMonomial::one(), Scalar::one())
    }

    pub fn from_monomial(m: PbwMonomial, coeff: Scalar) -> Self {
        let mut v = GradedVector::zero();
        v.add_term(m, coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: PbwMonomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = e.get() + &coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, rhs: &GradedVector, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), factor * c);
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> GradedVector {
        let mut out = GradedVector::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest depth among the monomials (zero vector: 0).
    pub fn max_depth(&self) -> i64 {
        self.terms.keys().map(|m| m.depth()).max().unwrap_or(0)
    }

    /// The common block of all monomials, when homogeneous; None for the zero
    /// vector or an inhomogeneous combination.
    pub fn block(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys();
        let first = it.next()?.block();
        for m in it {
            if m.block() != first {
                return None;
            }
        }
        Some(first)
    }

    /// Coordinates with respect to an ordered block basis; None when some
    /// monomial is not in the basis.
    pub fn to_coords(&self, basis: &[PbwMonomial]) -> Option<Vec<Scalar>> {
        let mut coords = vec![Scalar::zero(); basis.len()];
        for (m, c) in &self.terms {
            let idx = basis.binary_search(m).ok()?;
            coords[idx] = c.clone();
        }
        Some(coords)
    }

    pub fn from_coords(basis: &[PbwMonomial], coords: &[Scalar]) -> GradedVector {
        let mut v = GradedVector::zero();
        for (m, c) in basis.iter().zip(coords) {
            v.add_term(m.clone(), c.clone());
        }
        v
    }
}

/// All canonical monomials of the given (charge, depth) block, in increasing
/// canonical order. `kind` fixes the index ranges of the lowering set.
pub fn enumerate_block(kind: ModuleKind, charge: i64, depth: i64) -> Vec<PbwMonomial> {
    if depth < 0 {
        return Vec::new();
    }
    // candidate factors in canonical order, index ranges capped by the block
    // depth (no single factor can be deeper than the block)
    let mut stream: Vec<ModeSymbol> = Vec::new();
    let families = [FieldId::J, FieldId::L, FieldId::GMinus, FieldId::GPlus];
    for fam in families {
        for idx in -depth..=0 {
            let m = ModeSymbol::new(fam, idx);
            if kind.is_lowering(m) {
                stream.push(m);
            }
        }
    }
    let mut out = Vec::new();
    let mut acc: Vec<ModeSymbol> = Vec::new();
    fn rec(
        stream: &[ModeSymbol],
        pos: usize,
        rem_charge: i64,
        rem_depth: i64,
        acc: &mut Vec<ModeSymbol>,
        out: &mut Vec<PbwMonomial>,
    ) {
        if rem_depth == 0 && rem_charge == 0 {
            out.push(PbwMonomial::from_factors(acc.clone()));
            // no further factor can return to (0, 0): every candidate either
            // adds depth or changes charge
        }
        for j in pos..stream.len() {
            let f = &stream[j];
            let d = f.depth_offset();
            if d > rem_depth {
                continue;
            }
            // a zero-depth factor must make progress on the charge
            if d == 0 && f.charge_offset() * rem_charge <= 0 {
                continue;
            }
            acc.push(*f);
            rec(
                stream,
                j,
                rem_charge - f.charge_offset(),
                rem_depth - d,
                acc,
                out,
            );
            acc.pop();
        }
    }
    rec(&stream, 0, charge, depth, &mut acc, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(f: FieldId, i: i64) -> ModeSymbol {
        ModeSymbol::new(f, i)
    }

    #[test]
    fn verma_depth_one_charge_zero() {
        let ms_list = enumerate_block(ModuleKind::Verma, 0, 1);
        let names: Vec<String> = ms_list.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["J_{-1}", "L_{-1}", "G-_{-1} G+_0"]);
    }

    #[test]
    fn vacuum_depth_two_blocks() {
        let c0 = enumerate_block(ModuleKind::Vacuum, 0, 2);
        let names: Vec<String> = c0.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["J_{-2}", "(J_{-1})^2", "L_{-2}"]);
        let c2 = enumerate_block(ModuleKind::Vacuum, 2, 2);
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[0].to_string(), "(G+_{-1})^2");
    }

    #[test]
    fn counts_match_brute_force() {
        // independent oracle: enumerate multisets by bounded multiplicity
        // vectors over the full candidate list and filter
        fn brute(kind: ModuleKind, charge: i64, depth: i64) -> usize {
            let mut cands: Vec<ModeSymbol> = Vec::new();
            for fam in [FieldId::J, FieldId::L, FieldId::GMinus, FieldId::GPlus] {
                for idx in -depth..=0 {
                    let m = ModeSymbol::new(fam, idx);
                    if kind.is_lowering(m) {
                        cands.push(m);
                    }
                }
            }
            let mut count = 0usize;
            // multiplicity of each candidate bounded by depth (or by |charge|
            // + depth for the zero-depth factor)
            let bound: Vec<i64> = cands
                .iter()
                .map(|c| {
                    if c.depth_offset() == 0 {
                        charge.abs() + depth
                    } else {
                        depth / c.depth_offset()
                    }
                })
                .collect();
            fn walk(
                cands: &[ModeSymbol],
                bound: &[i64],
                i: usize,
                charge: i64,
                depth: i64,
                count: &mut usize,
            ) {
                if i == cands.len() {
                    if charge == 0 && depth == 0 {
                        *count += 1;
                    }
                    return;
                }
                for mult in 0..=bound[i] {
                    let c = charge - mult * cands[i].charge_offset();
                    let d = depth - mult * cands[i].depth_offset();
                    if d < 0 {
                        break;
                    }
                    walk(cands, bound, i + 1, c, d, count);
                }
            }
            walk(&cands, &bound, 0, charge, depth, &mut count);
            count
        }

        for kind in [ModuleKind::Verma, ModuleKind::Vacuum] {
            for charge in -3..=3 {
                for depth in 0..=4 {
                    assert_eq!(
                        enumerate_block(kind, charge, depth).len(),
                        brute(kind, charge, depth),
                        "kind {kind:?} block ({charge}, {depth})"
                    );
                }
            }
        }
    }

    #[test]
    fn vacuum_charge_zero_dimensions() {
        let dims: Vec<usize> = (0..=4)
            .map(|d| enumerate_block(ModuleKind::Vacuum, 0, d).len())
            .collect();
        assert_eq!(dims, vec![1, 1, 3, 6, 13]);
    }

    #[test]
    fn verma_depth_two_charge_zero_count() {
        assert_eq!(enumerate_block(ModuleKind::Verma, 0, 2).len(), 10);
    }

    #[test]
    fn monomial_display_powers() {
        let m = PbwMonomial::power(ms(FieldId::GPlus, -1), 3);
        assert_eq!(m.to_string(), "(G+_{-1})^3");
        assert_eq!(m.block(), (3, 3));
    }

    #[test]
    fn top_space_monomials_are_gplus_powers() {
        for a in 0..4 {
            let b = enumerate_block(ModuleKind::Verma, a, 0);
            assert_eq!(b.len(), 1);
            assert_eq!(b[0], PbwMonomial::power(ms(FieldId::GPlus, 0), a as u32));
        }
        assert!(enumerate_block(ModuleKind::Verma, -1, 0).is_empty());
    }
}
