//! Exact arithmetic in Q and in the rational-function field Q(k), the
//! coefficient field of everything downstream. Mode indices stay concrete
//! integers; only the level k is symbolic.

mod poly;
mod rational;
mod scalar;

pub use poly::Poly;
pub use rational::Rational;
pub use scalar::Scalar;

/// Binomial coefficient C(m, j) for integer m (possibly negative) and j >= 0.
pub fn binomial(m: i64, j: u32) -> Rational {
    let mut num = Rational::one();
    for t in 0..j as i64 {
        num = &num * &Rational::from_int(m - t);
    }
    let mut fact = Rational::one();
    for t in 1..=j as i64 {
        fact = &fact * &Rational::from_int(t);
    }
    &num / &fact
}

/// Falling factorial m(m-1)...(m-d+1).
pub fn falling(m: i64, d: u32) -> Rational {
    let mut out = Rational::one();
    for t in 0..d as i64 {
        out = &out * &Rational::from_int(m - t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_on_negative_upper_index() {
        assert_eq!(binomial(-2, 2), Rational::from_int(3));
        assert_eq!(binomial(3, 2), Rational::from_int(3));
        assert_eq!(binomial(0, 0), Rational::one());
        assert_eq!(binomial(1, 3), Rational::zero());
    }

    #[test]
    fn falling_factorial() {
        assert_eq!(falling(5, 3), Rational::from_int(60));
        assert_eq!(falling(-1, 2), Rational::from_int(2));
        assert_eq!(falling(7, 0), Rational::one());
    }
}
