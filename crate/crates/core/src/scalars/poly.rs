//! Dense univariate polynomials in the level variable k with rational
//! coefficients. Degrees stay tiny throughout (the deepest formulas are
//! quadratic or cubic in k), so a dense representation with textbook
//! algorithms is the right tool.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::CoreError;
use crate::scalars::Rational;

/// coeffs[i] is the coefficient of k^i; the last entry is nonzero and the
/// empty vector is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The variable k itself.
    pub fn variable() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division; None when the divisor is zero.
    pub fn div_rem(&self, div: &Poly) -> Option<(Poly, Poly)> {
        if div.is_zero() {
            return None;
        }
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().recip().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = &rem.leading() * &lead_inv;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let mut coeffs = rem.coeffs;
            for (j, b) in div.coeffs.iter().enumerate() {
                coeffs[shift + j] = &coeffs[shift + j] - &(&factor * b);
            }
            rem = Poly::from_coeffs(coeffs);
        }
        Some((Poly::from_coeffs(quot), rem))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scale to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip().unwrap())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Clear coefficient denominators: returns (integer coefficients, the
    /// positive rational multiplier applied), so `self * multiplier` has the
    /// returned integer coefficients.
    pub fn to_integer_scaled(&self) -> (Vec<BigInt>, BigRational) {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mult = BigRational::from_integer(lcm);
        let ints = self
            .coeffs
            .iter()
            .map(|c| {
                let v = &c.0 * &mult;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        (ints, mult)
    }

    /// Parse the textual form emitted by [`format_integer_poly`]; rational
    /// coefficients like `2/3k` are also accepted.
    pub fn parse(s: &str) -> Result<Poly, CoreError> {
        let err = |reason: String| CoreError::Parse {
            kind: "polynomial",
            input: s.to_string(),
            reason,
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input".into()));
        }
        let mut terms: Vec<Rational> = Vec::new();
        let bytes = compact.as_bytes();
        let mut pos = 0usize;
        while pos < bytes.len() {
            let mut sign = Rational::one();
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -Rational::one();
                    pos += 1;
                }
                _ => {}
            }
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                pos += 1;
            }
            let coeff_str = &compact[start..pos];
            let mut coeff = if coeff_str.is_empty() {
                Rational::one()
            } else {
                coeff_str
                    .parse::<Rational>()
                    .map_err(|e| err(e.to_string()))?
            };
            coeff = &coeff * &sign;
            let mut exp = 0usize;
            if pos < bytes.len() && bytes[pos] == b'k' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let estart = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = compact[estart..pos]
                        .parse::<usize>()
                        .map_err(|e| err(e.to_string()))?;
                }
            } else if coeff_str.is_empty() {
                return Err(err(format!("expected a term at offset {start}")));
            }
            if terms.len() <= exp {
                terms.resize(exp + 1, Rational::zero());
            }
            terms[exp] = &terms[exp] + &coeff;
        }
        Ok(Poly::from_coeffs(terms))
    }
}

/// Render integer coefficients as `2k^2-3k+1` (descending powers).
pub fn format_integer_poly(coeffs: &[BigInt]) -> String {
    if coeffs.iter().all(Zero::is_zero) {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        if !mag.is_one() || i == 0 {
            out.push_str(&mag.to_string());
        }
        match i {
            0 => {}
            1 => out.push('k'),
            _ => out.push_str(&format!("k^{i}")),
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.0.is_negative();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "k")?,
                _ => write!(f, "k^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "1", "-1", "k", "-k", "2k+3", "k^2-1", "-4k^3+2k-7", "3k^2"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn division_with_remainder() {
        let a = p("k^2-1");
        let b = p("k-1");
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p("k+1"));
        assert!(r.is_zero());

        let (q, r) = p("k^3+2").div_rem(&p("k^2")).unwrap();
        assert_eq!(q, p("k"));
        assert_eq!(r, p("2"));
    }

    #[test]
    fn gcd_is_monic() {
        let g = p("2k+2").gcd(&p("3k^2-3"));
        assert_eq!(g, p("k+1"));
        assert!(p("5").gcd(&p("7")).is_one());
        assert!(Poly::zero().gcd(&Poly::zero()).is_zero());
    }

    #[test]
    fn eval_horner() {
        let q = p("2k^2-3k+1");
        assert_eq!(q.eval(&Rational::new(1, 2)), Rational::zero());
        assert_eq!(q.eval(&Rational::from_int(2)), Rational::from_int(3));
    }
}
