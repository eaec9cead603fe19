//! Mode actions on graded modules: exact PBW normal forms.
//!
//! `act` rewrites mode-times-monomial products with the derived brackets
//! until every word is canonical or has hit the cyclic vector, where the
//! annihilation and eigenvalue rules of the module kind apply. The quadratic
//! (J^2)_l modes stay symbolic inside bracket expressions and expand here,
//! where the grading makes the sums finite: on a vector of depth d only the
//! terms whose annihilating factor has index <= d survive.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{CoreError, Result};
use crate::ope::{BracketEngine, FieldId, ModeExpression, ModeSymbol};
use crate::scalars::{Rational, Scalar};
use crate::weights::HighestWeight;

use super::pbw::{pbw_key, GradedVector, ModuleKind, PbwMonomial};

/// Truncation window: blocks with depth <= max_depth and |charge| <=
/// charge_window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub max_depth: i64,
    pub charge_window: i64,
}

impl Truncation {
    pub fn new(max_depth: i64, charge_window: i64) -> Self {
        assert!(max_depth >= 0 && charge_window >= 0);
        Truncation {
            max_depth,
            charge_window,
        }
    }

    pub fn contains(&self, charge: i64, depth: i64) -> bool {
        (0..=self.max_depth).contains(&depth) && charge.abs() <= self.charge_window
    }
}

/// A fixed module: kind, highest weight, and level (None keeps k symbolic).
pub struct ModuleContext {
    kind: ModuleKind,
    hw: HighestWeight,
    level: Option<Rational>,
    engine: BracketEngine,
    bracket_cache: RefCell<HashMap<(ModeSymbol, ModeSymbol), ModeExpression>>,
    act_cache: RefCell<HashMap<(ModeSymbol, PbwMonomial), GradedVector>>,
}

impl ModuleContext {
    pub fn new(kind: ModuleKind, hw: HighestWeight, level: Option<Rational>) -> Result<Self> {
        if level.as_ref() == Some(&Rational::from_int(-3)) {
            return Err(CoreError::PoleAtLevel("-3".into()));
        }
        Ok(ModuleContext {
            kind,
            hw,
            level,
            engine: BracketEngine::new(),
            bracket_cache: RefCell::new(HashMap::new()),
            act_cache: RefCell::new(HashMap::new()),
        })
    }

    /// The vacuum module at level k.
    pub fn vacuum(level: Rational) -> Result<Self> {
        ModuleContext::new(ModuleKind::Vacuum, HighestWeight::zero(), Some(level))
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn highest_weight(&self) -> &HighestWeight {
        &self.hw
    }

    pub fn level(&self) -> Option<&Rational> {
        self.level.as_ref()
    }

    fn specialize(&self, s: &Scalar) -> Scalar {
        match &self.level {
            Some(k0) => s
                .specialize_scalar(k0)
                .expect("bracket coefficients have no pole away from k = -3"),
            None => s.clone(),
        }
    }

    /// Derived bracket with coefficients specialized at the module level.
    fn bracket(&self, a: ModeSymbol, b: ModeSymbol) -> ModeExpression {
        if let Some(e) = self.bracket_cache.borrow().get(&(a, b)) {
            return e.clone();
        }
        let raw = self
            .engine
            .bracket(a, b)
            .expect("brackets of generator modes are always derivable");
        let mut out = ModeExpression::zero();
        out.central = self.specialize(&raw.central);
        for (s, c) in &raw.linear {
            out.add_linear(*s, self.specialize(c));
        }
        for (l, c) in &raw.j_squared {
            out.add_j_squared(*l, self.specialize(c));
        }
        self.bracket_cache.borrow_mut().insert((a, b), out.clone());
        out
    }

    /// Action of one mode on the cyclic vector.
    fn base_rule(&self, mode: ModeSymbol) -> GradedVector {
        if self.kind.is_lowering(mode) {
            return GradedVector::from_monomial(
                PbwMonomial::from_factors(vec![mode]),
                Scalar::one(),
            );
        }
        match (mode.family, mode.index) {
            (FieldId::J, 0) => GradedVector::from_monomial(
                PbwMonomial::one(),
                self.specialize(&self.hw.xi),
            ),
            (FieldId::L, 0) => GradedVector::from_monomial(
                PbwMonomial::one(),
                self.specialize(&self.hw.chi),
            ),
            _ => GradedVector::zero(),
        }
    }

    fn act_monomial(&self, mode: ModeSymbol, mono: &PbwMonomial) -> GradedVector {
        if let Some(v) = self.act_cache.borrow().get(&(mode, mono.clone())) {
            return v.clone();
        }
        let result = match mono.split_head() {
            None => self.base_rule(mode),
            Some((head, tail)) => {
                if self.kind.is_lowering(mode) && pbw_key(&mode) <= pbw_key(&head) {
                    GradedVector::from_monomial(mono.prepend(mode), Scalar::one())
                } else {
                    // mode * head = head * mode + [mode, head]
                    let inner = self.act_monomial(mode, &tail);
                    let mut out = self.act(head, &inner);
                    let br = self.bracket(mode, head);
                    let tail_vec = GradedVector::from_monomial(tail, Scalar::one());
                    out.add_scaled(&self.apply_expression(&br, &tail_vec), &Scalar::one());
                    out
                }
            }
        };
        self.act_cache
            .borrow_mut()
            .insert((mode, mono.clone()), result.clone());
        result
    }

    /// Exact action of a generator mode (families J, L, G+, G-; T is
    /// rewritten through T_n = L_n + ((n+1)/2) J_n).
    pub fn act(&self, mode: ModeSymbol, v: &GradedVector) -> GradedVector {
        if mode.family == FieldId::T {
            let mut out = self.act(ModeSymbol::new(FieldId::L, mode.index), v);
            let jpart = self.act(ModeSymbol::new(FieldId::J, mode.index), v);
            out.add_scaled(&jpart, &Scalar::ratio(mode.index + 1, 2));
            return out;
        }
        let mut out = GradedVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.act_monomial(mode, m), c);
        }
        out
    }

    /// Action with the spec'd truncation contract: an out-of-window result
    /// is an explicit error.
    pub fn act_within(
        &self,
        mode: ModeSymbol,
        v: &GradedVector,
        trunc: &Truncation,
    ) -> Result<GradedVector> {
        let out = self.act(mode, v);
        for (m, _) in out.terms() {
            let (c, d) = m.block();
            if !trunc.contains(c, d) {
                return Err(CoreError::Truncation {
                    charge: c,
                    depth: d,
                });
            }
        }
        Ok(out)
    }

    /// Apply a bracket expression: central part, linear modes, and the
    /// normal-ordered expansion of the (J^2)_l terms.
    pub fn apply_expression(&self, e: &ModeExpression, v: &GradedVector) -> GradedVector {
        let mut out = v.scaled(&self.specialize(&e.central));
        for (sym, c) in &e.linear {
            out.add_scaled(&self.act(*sym, v), &self.specialize(c));
        }
        for (l, c) in &e.j_squared {
            out.add_scaled(&self.apply_j_squared(*l, v), &self.specialize(c));
        }
        out
    }

    /// (J^2)_l v with (J^2)_l = sum_{a<=-1} J_a J_{l-a} + sum_{a>=0} J_{l-a} J_a;
    /// only factors with annihilating index <= depth(v) act nonzero, so the
    /// sum is finite term by term.
    pub fn apply_j_squared(&self, l: i64, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (mono, coeff) in v.terms() {
            let d = mono.depth();
            let mv = GradedVector::from_monomial(mono.clone(), Scalar::one());
            let mut acc = GradedVector::zero();
            // creation-left part: a <= -1, inner factor J_{l-a} needs l-a <= d
            let lo = l - d;
            for a in lo..=-1 {
                let inner = self.act(ModeSymbol::new(FieldId::J, l - a), &mv);
                acc.add_scaled(
                    &self.act(ModeSymbol::new(FieldId::J, a), &inner),
                    &Scalar::one(),
                );
            }
            // annihilation-right part: a >= 0, inner factor J_a needs a <= d
            for a in 0..=d {
                let inner = self.act(ModeSymbol::new(FieldId::J, a), &mv);
                acc.add_scaled(
                    &self.act(ModeSymbol::new(FieldId::J, l - a), &inner),
                    &Scalar::one(),
                );
            }
            out.add_scaled(&acc, coeff);
        }
        out
    }

    /// Apply a canonical word of modes (rightmost factor first).
    pub fn act_word(&self, word: &PbwMonomial, v: &GradedVector) -> GradedVector {
        let mut out = v.clone();
        for f in word.factors().iter().rev() {
            out = self.act(*f, &out);
            if out.is_zero() {
                break;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{g_fun, h_fun, xi_chi};

    fn ms(f: FieldId, i: i64) -> ModeSymbol {
        ModeSymbol::new(f, i)
    }

    fn verma(xi: Scalar, chi: Scalar, level: Option<Rational>) -> ModuleContext {
        ModuleContext::new(ModuleKind::Verma, HighestWeight::new(xi, chi), level).unwrap()
    }

    #[test]
    fn eigenvalues_on_cyclic_vector() {
        let ctx = verma(Scalar::ratio(2, 3), Scalar::ratio(-1, 5), None);
        let v = GradedVector::cyclic();
        assert_eq!(
            ctx.act(ms(FieldId::J, 0), &v),
            v.scaled(&Scalar::ratio(2, 3))
        );
        assert_eq!(
            ctx.act(ms(FieldId::L, 0), &v),
            v.scaled(&Scalar::ratio(-1, 5))
        );
        assert!(ctx.act(ms(FieldId::GMinus, 0), &v).is_zero());
        assert!(ctx.act(ms(FieldId::GPlus, 1), &v).is_zero());
    }

    #[test]
    fn vacuum_annihilation_rules() {
        let ctx = ModuleContext::vacuum(Rational::new(-1, 2)).unwrap();
        let v = GradedVector::cyclic();
        assert!(ctx.act(ms(FieldId::GPlus, 0), &v).is_zero());
        assert!(ctx.act(ms(FieldId::L, -1), &v).is_zero());
        assert!(ctx.act(ms(FieldId::GMinus, -1), &v).is_zero());
        assert!(!ctx.act(ms(FieldId::J, -1), &v).is_zero());
    }

    #[test]
    fn level_mode_on_j_creation_in_vacuum() {
        // J_1 J_{-1} |0> = (2k+3)/3 |0>
        let k = Rational::new(-1, 2);
        let ctx = ModuleContext::vacuum(k.clone()).unwrap();
        let v = ctx.act(ms(FieldId::J, -1), &GradedVector::cyclic());
        let out = ctx.act(ms(FieldId::J, 1), &v);
        let kappa = "(2k+3)/(3)".parse::<Scalar>().unwrap();
        let want = GradedVector::cyclic().scaled(&kappa.specialize_scalar(&k).unwrap());
        assert_eq!(out, want);
    }

    #[test]
    fn gminus_gplus_reproduces_g() {
        // G-_0 G+_0 |xi, chi> = g(xi, chi) |xi, chi>, symbolically in k,
        // on several rational (xi, chi) pairs
        let samples = [(2i64, 3i64, 1i64, 2i64), (-1, 2, 0, 1), (1, 1, -2, 5), (0, 1, 3, 4), (5, 7, -1, 3)];
        for (xn, xd, cn, cd) in samples {
            let xi = Scalar::ratio(xn, xd);
            let chi = Scalar::ratio(cn, cd);
            let ctx = verma(xi.clone(), chi.clone(), None);
            let v = ctx.act(ms(FieldId::GPlus, 0), &GradedVector::cyclic());
            let out = ctx.act(ms(FieldId::GMinus, 0), &v);
            let want =
                GradedVector::cyclic().scaled(&g_fun(&xi, &chi, &Scalar::variable()));
            assert_eq!(out, want, "xi = {xi}, chi = {chi}");
        }
    }

    #[test]
    fn gminus_on_gplus_powers_reproduces_h_chain() {
        // G-_0 (G+_0)^i |xi, chi> = i h_i(xi, chi) (G+_0)^{i-1} |xi, chi>
        let samples = [(1i64, 3i64, 2i64, 7i64), (-2, 5, 1, 2), (3, 2, 0, 1), (0, 1, -1, 4), (4, 9, 5, 6)];
        for (xn, xd, cn, cd) in samples {
            let xi = Scalar::ratio(xn, xd);
            let chi = Scalar::ratio(cn, cd);
            let ctx = verma(xi.clone(), chi.clone(), None);
            for i in 1..=4u32 {
                let power = GradedVector::from_monomial(
                    PbwMonomial::power(ms(FieldId::GPlus, 0), i),
                    Scalar::one(),
                );
                let out = ctx.act(ms(FieldId::GMinus, 0), &power);
                let scale = h_fun(i, &xi, &chi, &Scalar::variable())
                    .unwrap()
                    .scale_rational(&Rational::from_int(i as i64));
                let want = GradedVector::from_monomial(
                    PbwMonomial::power(ms(FieldId::GPlus, 0), i - 1),
                    scale,
                );
                assert_eq!(out, want, "i = {i}, xi = {xi}");
            }
        }
    }

    #[test]
    fn grading_is_exact_on_blocks() {
        // J_0 and L_0 act as xi + charge and chi + depth on any block vector
        let xi = Scalar::ratio(1, 3);
        let chi = Scalar::ratio(2, 5);
        let ctx = verma(xi.clone(), chi.clone(), None);
        for charge in -1..=2 {
            for depth in 0..=2 {
                for mono in super::super::pbw::enumerate_block(ModuleKind::Verma, charge, depth) {
                    let v = GradedVector::from_monomial(mono, Scalar::one());
                    let want_j = v.scaled(&(&xi + &Scalar::from_int(charge)));
                    let want_l = v.scaled(&(&chi + &Scalar::from_int(depth)));
                    assert_eq!(ctx.act(ms(FieldId::J, 0), &v), want_j);
                    assert_eq!(ctx.act(ms(FieldId::L, 0), &v), want_l);
                }
            }
        }
    }

    #[test]
    fn top_space_labels_vanish_under_gminus() {
        // at the labelled weights, G-_0 (G+_0)^i |hw> = 0 exactly at the
        // label i (the h_i root), symbolically in k
        let hw = xi_chi(3, 1, &Scalar::variable());
        let ctx = verma(hw.xi, hw.chi, None);
        let power = GradedVector::from_monomial(
            PbwMonomial::power(ms(FieldId::GPlus, 0), 3),
            Scalar::one(),
        );
        assert!(ctx.act(ms(FieldId::GMinus, 0), &power).is_zero());
        let lower = GradedVector::from_monomial(
            PbwMonomial::power(ms(FieldId::GPlus, 0), 2),
            Scalar::one(),
        );
        assert!(!ctx.act(ms(FieldId::GMinus, 0), &lower).is_zero());
    }

    #[test]
    fn truncation_error_is_explicit() {
        let ctx = verma(Scalar::zero(), Scalar::zero(), None);
        let trunc = Truncation::new(1, 2);
        let v = ctx.act(ms(FieldId::J, -1), &GradedVector::cyclic());
        assert!(matches!(
            ctx.act_within(ms(FieldId::J, -1), &v, &trunc),
            Err(CoreError::Truncation { depth: 2, .. })
        ));
        assert!(ctx.act_within(ms(FieldId::L, 1), &v, &trunc).is_ok());
    }
}
