//! Mode symbols and finite linear combinations of modes. Indices are always
//! the displayed ones (J(z) = sum J_n z^{-n-1}, G-(z) = sum G-_n z^{-n-2},
//! likewise T, L, (J^2)); the weight-2 fields carry display shift 1.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::Scalar;

use super::fields::FieldId;

/// One generator mode in display convention, e.g. `G-_{-1}` or `L_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeSymbol {
    pub family: FieldId,
    pub index: i64,
}

impl ModeSymbol {
    pub fn new(family: FieldId, index: i64) -> Self {
        ModeSymbol { family, index }
    }

    pub fn internal_index(&self) -> i64 {
        self.index + self.family.display_shift()
    }

    /// The L_0-grade this mode adds when applied to a vector (display
    /// convention: every generator mode X_n raises depth by -n).
    pub fn depth_offset(&self) -> i64 {
        -self.index
    }

    pub fn charge_offset(&self) -> i64 {
        self.family.charge()
    }
}

impl fmt::Display for ModeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index < 0 {
            write!(f, "{}_{{{}}}", self.family.symbol(), self.index)
        } else {
            write!(f, "{}_{}", self.family.symbol(), self.index)
        }
    }
}

/// A finite Scalar-linear combination of generator modes, quadratic
/// (J^2)_l modes (kept unexpanded at this layer), and a central part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeExpression {
    pub linear: BTreeMap<ModeSymbol, Scalar>,
    pub j_squared: BTreeMap<i64, Scalar>,
    pub central: Scalar,
}

impl Default for ModeExpression {
    fn default() -> Self {
        ModeExpression::zero()
    }
}

impl ModeExpression {
    pub fn zero() -> Self {
        ModeExpression {
            linear: BTreeMap::new(),
            j_squared: BTreeMap::new(),
            central: Scalar::zero(),
        }
    }

    pub fn from_mode(sym: ModeSymbol) -> Self {
        let mut e = ModeExpression::zero();
        e.add_linear(sym, Scalar::one());
        e
    }

    pub fn from_central(c: Scalar) -> Self {
        let mut e = ModeExpression::zero();
        e.central = c;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_empty() && self.j_squared.is_empty() && self.central.is_zero()
    }

    pub fn add_linear(&mut self, sym: ModeSymbol, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.linear.entry(sym).or_insert_with(Scalar::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.linear.remove(&sym);
        }
    }

    pub fn add_j_squared(&mut self, index: i64, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.j_squared.entry(index).or_insert_with(Scalar::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.j_squared.remove(&index);
        }
    }

    pub fn add_central(&mut self, coeff: &Scalar) {
        self.central = &self.central + coeff;
    }

    pub fn add_scaled(&mut self, rhs: &ModeExpression, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (s, c) in &rhs.linear {
            self.add_linear(*s, factor * c);
        }
        for (l, c) in &rhs.j_squared {
            self.add_j_squared(*l, factor * c);
        }
        self.add_central(&(factor * &rhs.central));
    }

    pub fn scaled(&self, factor: &Scalar) -> ModeExpression {
        let mut out = ModeExpression::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn negated(&self) -> ModeExpression {
        self.scaled(&-Scalar::one())
    }

    pub fn coeff(&self, sym: &ModeSymbol) -> Scalar {
        self.linear.get(sym).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Uniform (charge, depth) offset of all non-central terms, when they
    /// agree; central-only expressions report (0, 0).
    pub fn homogeneous_offset(&self) -> Option<(i64, i64)> {
        let mut seen: Option<(i64, i64)> = None;
        for sym in self.linear.keys() {
            let o = (sym.charge_offset(), sym.depth_offset());
            if *seen.get_or_insert(o) != o {
                return None;
            }
        }
        for l in self.j_squared.keys() {
            let o = (0, -l);
            if *seen.get_or_insert(o) != o {
                return None;
            }
        }
        Some(seen.unwrap_or((0, 0)))
    }
}

impl fmt::Display for ModeExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (s, c) in &self.linear {
            parts.push(format!("{} {}", c, s));
        }
        for (l, c) in &self.j_squared {
            parts.push(format!("{} (J^2)_{{{}}}", c, l));
        }
        if !self.central.is_zero() {
            parts.push(format!("{}", self.central));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn internal_index_shifts() {
        assert_eq!(ModeSymbol::new(FieldId::J, -1).internal_index(), -1);
        assert_eq!(ModeSymbol::new(FieldId::GMinus, -1).internal_index(), 0);
        assert_eq!(ModeSymbol::new(FieldId::L, 0).internal_index(), 1);
    }

    #[test]
    fn cancellation_in_linear_part() {
        let mut e = ModeExpression::from_mode(ModeSymbol::new(FieldId::J, 2));
        e.add_linear(ModeSymbol::new(FieldId::J, 2), -Scalar::one());
        assert!(e.is_zero());
    }

    #[test]
    fn homogeneity_detection() {
        let mut e = ModeExpression::from_mode(ModeSymbol::new(FieldId::J, -1));
        e.add_j_squared(1, Scalar::one());
        assert_eq!(e.homogeneous_offset(), None);
        let mut h = ModeExpression::from_mode(ModeSymbol::new(FieldId::L, 2));
        h.add_j_squared(2, Scalar::from_int(3));
        assert_eq!(h.homogeneous_offset(), Some((0, -2)));
    }
}
