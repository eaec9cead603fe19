//! Elements of the rational-function field Q(k).
//!
//! Canonical form: numerator and denominator share no common factor and the
//! denominator is monic. With that normalization two scalars are equal exactly
//! when they are structurally equal, so `Scalar` can sit directly in
//! coefficient maps as a hashable value.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CoreError;
use crate::scalars::poly::format_integer_poly;
use crate::scalars::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar {
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    /// Exact fraction of two integers.
    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(Rational::new(n, d))
    }

    /// The level variable k.
    pub fn variable() -> Self {
        Scalar {
            num: Poly::variable(),
            den: Poly::one(),
        }
    }

    /// Build and normalize; the denominator must be nonzero.
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoreError> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            let (n, nr) = num.div_rem(&g).unwrap();
            let (d, dr) = den.div_rem(&g).unwrap();
            debug_assert!(nr.is_zero() && dr.is_zero());
            (n, d)
        };
        let lead_inv = den.leading().recip().expect("nonzero denominator");
        Scalar {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is constant in k, i.e. an element of Q.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().is_none_or(|d| d == 0)
    }

    /// The constant value if `is_constant`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Scalar, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Scalar::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn divide(&self, rhs: &Scalar) -> Result<Scalar, CoreError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale_rational(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact evaluation at k = at; a vanishing denominator is a pole error,
    /// never a silent value.
    pub fn specialize(&self, at: &Rational) -> Result<Rational, CoreError> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(CoreError::PoleAtLevel(at.to_string()));
        }
        Ok(&self.num.eval(at) / &d)
    }

    /// Replace k by the constant `at`, staying inside `Scalar`.
    pub fn specialize_scalar(&self, at: &Rational) -> Result<Scalar, CoreError> {
        Ok(Scalar::from_rational(self.specialize(at)?))
    }

    /// Canonical string `(<int poly>)/(<int poly>)`; exact round-trip with
    /// [`Scalar::from_str`]. Integer normalization: clear all coefficient
    /// denominators, then divide out the joint content, keeping the
    /// denominator's leading coefficient positive.
    fn canonical_string(&self) -> String {
        let (mut n_int, n_mult) = self.num.to_integer_scaled();
        let (mut d_int, d_mult) = self.den.to_integer_scaled();
        // Rescale both to the common multiplier lcm(n_mult, d_mult) (both are
        // positive integers by construction).
        let l = n_mult.numer().lcm(d_mult.numer());
        let n_fix = &l / n_mult.numer();
        let d_fix = &l / d_mult.numer();
        for c in &mut n_int {
            *c *= &n_fix;
        }
        for c in &mut d_int {
            *c *= &d_fix;
        }
        let mut content = BigInt::zero();
        for c in n_int.iter().chain(d_int.iter()) {
            content = content.gcd(c);
        }
        if !content.is_zero() && !content.is_one() {
            for c in &mut n_int {
                *c /= &content;
            }
            for c in &mut d_int {
                *c /= &content;
            }
        }
        if d_int.last().is_some_and(Signed::is_negative) {
            for c in n_int.iter_mut().chain(d_int.iter_mut()) {
                *c = -c.clone();
            }
        }
        format!(
            "({})/({})",
            format_integer_poly(&n_int),
            format_integer_poly(&d_int)
        )
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl FromStr for Scalar {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (num_str, den_str) = match t.split_once(")/(") {
            Some((n, d)) => {
                let n = n.strip_prefix('(').ok_or_else(|| CoreError::Parse {
                    kind: "scalar",
                    input: s.to_string(),
                    reason: "expected leading '('".into(),
                })?;
                let d = d.strip_suffix(')').ok_or_else(|| CoreError::Parse {
                    kind: "scalar",
                    input: s.to_string(),
                    reason: "expected trailing ')'".into(),
                })?;
                (n, d)
            }
            None => {
                // a bare numerator, optionally parenthesized
                let inner = t
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .unwrap_or(t);
                (inner, "1")
            }
        };
        let num = Poly::parse(num_str)?;
        let den = Poly::parse(den_str)?;
        Scalar::new(num, den)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let num = self
            .num
            .mul(&rhs.den)
            .add(&rhs.num.mul(&self.den));
        Scalar::normalized(num, self.den.mul(&rhs.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! scalar_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_owned_binop!(Add, add);
scalar_owned_binop!(Sub, sub);
scalar_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn addition_of_linear_polys() {
        assert_eq!(&s("k+1") + &s("k+2"), s("2k+3"));
    }

    #[test]
    fn cancellation_to_zero() {
        let lhs = s("(k^2-1)/(k-1)");
        assert!((&lhs - &s("k+1")).is_zero());
    }

    #[test]
    fn central_charge_shape() {
        // -4(k+1)(2k+3)/(k+3): denominator (k+3) survives normalization.
        let num = Poly::parse("-8k^2-20k-12").unwrap();
        let den = Poly::parse("k+3").unwrap();
        let c = Scalar::new(num, den).unwrap();
        assert_eq!(c.denominator(), &Poly::parse("k+3").unwrap());
        assert_eq!(c.to_string(), "(-8k^2-20k-12)/(k+3)");
    }

    #[test]
    fn specialization_examples() {
        let c = s("(-8k^2-20k-12)/(k+3)");
        assert_eq!(
            c.specialize(&Rational::new(-1, 2)).unwrap(),
            Rational::new(-8, 5)
        );
        assert_eq!(
            s("2k+3").specialize(&Rational::new(-3, 2)).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            s("(1)/(k+3)").specialize(&Rational::from_int(-3)),
            Err(CoreError::PoleAtLevel("-3".into()))
        );
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            s("k").divide(&Scalar::zero()),
            Err(CoreError::DivisionByZero)
        );
    }

    #[test]
    fn canonical_string_examples() {
        assert_eq!(Scalar::ratio(2, 3).to_string(), "(2)/(3)");
        assert_eq!(s("(2k+3)/(3)").to_string(), "(2k+3)/(3)");
        assert_eq!(Scalar::zero().to_string(), "(0)/(1)");
        // joint content is removed
        assert_eq!(s("(4k+8)/(6)").to_string(), "(2k+4)/(3)");
    }
}
