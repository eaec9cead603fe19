//! sl3 weight bookkeeping for the parameterization by admissible weights.
//!
//! Everything reduces to the trace form (x|y) = tr(xy) on diagonal 3x3
//! matrices. The Gram matrix of the fundamental coweights is computed from
//! the explicit matrices rather than hard-coded, which removes a whole class
//! of transcription errors.

use serde::Serialize;

use crate::scalars::Rational;

/// A diagonal element of sl3, stored by its diagonal entries.
type Diag = [Rational; 3];

fn diag(a: i64, b: i64, c: i64) -> Diag {
    [
        Rational::from_int(a),
        Rational::from_int(b),
        Rational::from_int(c),
    ]
}

fn scale(d: &Diag, c: &Rational) -> Diag {
    [&d[0] * c, &d[1] * c, &d[2] * c]
}

fn add(x: &Diag, y: &Diag) -> Diag {
    [&x[0] + &y[0], &x[1] + &y[1], &x[2] + &y[2]]
}

/// Trace form (x|y) = tr(xy) on diagonal matrices.
fn trace_form(x: &Diag, y: &Diag) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..3 {
        acc = &acc + &(&x[i] * &y[i]);
    }
    acc
}

/// h_1 = E_11 - E_22, h_2 = E_22 - E_33.
fn cartan(i: usize) -> Diag {
    match i {
        1 => diag(1, -1, 0),
        2 => diag(0, 1, -1),
        _ => unreachable!(),
    }
}

/// Fundamental weights: lam1 = (2h_1 + h_2)/3, lam2 = (h_1 + 2h_2)/3, so that
/// (lam_i | h_j) = delta_{ij}.
fn fundamental(i: usize) -> Diag {
    let third = Rational::new(1, 3);
    match i {
        1 => scale(&add(&scale(&cartan(1), &Rational::from_int(2)), &cartan(2)), &third),
        2 => scale(&add(&cartan(1), &scale(&cartan(2), &Rational::from_int(2))), &third),
        _ => unreachable!(),
    }
}

/// Gram matrix of (lam1, lam2) under the trace form, computed from the
/// explicit matrices.
pub fn gram_matrix() -> [[Rational; 2]; 2] {
    let l1 = fundamental(1);
    let l2 = fundamental(2);
    [
        [trace_form(&l1, &l1), trace_form(&l1, &l2)],
        [trace_form(&l2, &l1), trace_form(&l2, &l2)],
    ]
}

/// An affine sl3 weight a1*lam1 + a2*lam2 + level*Lam0, with Lam0 orthogonal
/// to the finite part. Inner products only see the finite part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl3Weight {
    pub a1: Rational,
    pub a2: Rational,
    pub level_coeff: Rational,
}

impl Sl3Weight {
    pub fn new(a1: Rational, a2: Rational, level_coeff: Rational) -> Self {
        Sl3Weight {
            a1,
            a2,
            level_coeff,
        }
    }

    /// Inner product of the finite parts through the Gram matrix.
    pub fn ip(&self, other: &Sl3Weight) -> Rational {
        let g = gram_matrix();
        let mut acc = Rational::zero();
        let a = [&self.a1, &self.a2];
        let b = [&other.a1, &other.a2];
        for i in 0..2 {
            for j in 0..2 {
                acc = &acc + &(&(a[i] * b[j]) * &g[i][j]);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_matrix_from_trace_form() {
        // independent oracle: tr of the explicit diagonal products
        // lam1 = diag(2/3, -1/3, -1/3): (lam1|lam1) = 4/9 + 1/9 + 1/9 = 2/3
        // lam2 = diag(1/3, 1/3, -2/3): (lam2|lam2) = 2/3, (lam1|lam2) = 1/3
        let g = gram_matrix();
        assert_eq!(g[0][0], Rational::new(2, 3));
        assert_eq!(g[0][1], Rational::new(1, 3));
        assert_eq!(g[1][0], Rational::new(1, 3));
        assert_eq!(g[1][1], Rational::new(2, 3));
    }

    #[test]
    fn fundamental_weights_are_dual_to_cartan() {
        for i in 1..=2 {
            for j in 1..=2 {
                let want = if i == j { Rational::one() } else { Rational::zero() };
                assert_eq!(trace_form(&fundamental(i), &cartan(j)), want);
            }
        }
    }
}
