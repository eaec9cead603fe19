//! Closed-form weight arithmetic: the top-space polynomials g and h_i, the
//! highest-weight labels (xi_{i,j}, chi_{i,j}), spectral-flow weight maps,
//! the central charge, and the admissible sl3 weights that parameterize the
//! simple modules at exceptional levels k = p/2 - 3.

mod sl3;

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::scalars::{Rational, Scalar};

pub use sl3::{gram_matrix, Sl3Weight};

/// An exceptional level: p odd >= 3 and k = p/2 - 3 (so k != -3 always).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Level {
    pub p: u64,
    pub k: Rational,
}

impl Level {
    pub fn new(p: u64) -> Result<Level> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(CoreError::InvalidArgument(format!(
                "level parameter p must be an odd integer >= 3, got {p}"
            )));
        }
        Ok(Level {
            p,
            k: Rational::new(p as i64 - 6, 2),
        })
    }

    pub fn k_scalar(&self) -> Scalar {
        Scalar::from_rational(self.k.clone())
    }
}

/// A highest weight (xi, chi): the J_0 and L_0 eigenvalues of the cyclic
/// vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HighestWeight {
    pub xi: Scalar,
    pub chi: Scalar,
}

impl HighestWeight {
    pub fn new(xi: Scalar, chi: Scalar) -> Self {
        HighestWeight { xi, chi }
    }

    pub fn zero() -> Self {
        HighestWeight::new(Scalar::zero(), Scalar::zero())
    }
}

/// g(xi, chi) = -(3 xi^2 - (2k+3) xi - (k+3) chi), the eigenvalue of
/// G-_0 G+_0 on the highest-weight vector.
pub fn g_fun(xi: &Scalar, chi: &Scalar, level: &Scalar) -> Scalar {
    let two_k_three = &(level + level) + &Scalar::from_int(3);
    let k_three = level + &Scalar::from_int(3);
    let three_xi_sq = (xi * xi).scale_rational(&Rational::from_int(3));
    -(&(&three_xi_sq - &(&two_k_three * xi)) - &(&k_three * chi))
}

/// h_i(xi, chi) = (1/i) (g(xi, chi) + g(xi+1, chi) + ... + g(xi+i-1, chi)),
/// computed as the averaged sum.
pub fn h_fun(i: u32, xi: &Scalar, chi: &Scalar, level: &Scalar) -> Result<Scalar> {
    if i == 0 {
        return Err(CoreError::InvalidArgument(
            "h_i is defined for i >= 1".into(),
        ));
    }
    let mut acc = Scalar::zero();
    for r in 0..i {
        let shifted = xi + &Scalar::from_int(r as i64);
        acc = &acc + &g_fun(&shifted, chi, level);
    }
    Ok(acc.scale_rational(&Rational::new(1, i as i64)))
}

/// The expanded closed form of h_i:
/// -i^2 + k i - 3 xi i + 3 i - 3 xi^2 - k + 2 k xi + 6 xi + k chi + 3 chi - 2.
pub fn h_fun_expanded(i: u32, xi: &Scalar, chi: &Scalar, level: &Scalar) -> Result<Scalar> {
    if i == 0 {
        return Err(CoreError::InvalidArgument(
            "h_i is defined for i >= 1".into(),
        ));
    }
    let i_s = Scalar::from_int(i as i64);
    let k = level;
    let mut acc = Scalar::zero();
    acc = &acc - &(&i_s * &i_s);
    acc = &acc + &(k * &i_s);
    acc = &acc - &(xi * &i_s).scale_rational(&Rational::from_int(3));
    acc = &acc + &i_s.scale_rational(&Rational::from_int(3));
    acc = &acc - &(xi * xi).scale_rational(&Rational::from_int(3));
    acc = &acc - k;
    acc = &acc + &(k * xi).scale_rational(&Rational::from_int(2));
    acc = &acc + &xi.scale_rational(&Rational::from_int(6));
    acc = &acc + &(k * chi);
    acc = &acc + &chi.scale_rational(&Rational::from_int(3));
    acc = &acc - &Scalar::from_int(2);
    Ok(acc)
}

/// The weight labels (xi_{i,j}, chi_{i,j}):
/// xi = (-2i - j + 2k + 6)/3,
/// chi = (i^2 + ji - ki - 3i + j^2 - 6j - 2jk + 3k + 6) / (3(k+3)).
pub fn xi_chi(i: u32, j: u32, level: &Scalar) -> HighestWeight {
    assert!(i >= 1 && j >= 1, "labels start at 1");
    let (i, j) = (i as i64, j as i64);
    let k = level;
    let xi = (&(k + k) + &Scalar::from_int(-2 * i - j + 6)).scale_rational(&Rational::new(1, 3));
    let numer = {
        let mut acc = Scalar::from_int(i * i + j * i - 3 * i + j * j - 6 * j + 6);
        acc = &acc + &k.scale_rational(&Rational::from_int(-i - 2 * j + 3));
        acc
    };
    let denom = (k + &Scalar::from_int(3)).scale_rational(&Rational::from_int(3));
    let chi = numer
        .divide(&denom)
        .expect("level k = -3 is excluded from the construction");
    HighestWeight::new(xi, chi)
}

/// The spectral-flow image of a highest weight with top-space dimension i:
/// (xi, chi) -> (xi + i - 1 - (2k+3)/3, chi - (xi + i - 1) + (2k+3)/3).
///
/// The chi component is the eigenvalue of psi(L_0) = L_0 - J_0 + (2k+3)/3 on
/// the extremal top-space vector, whose J_0 eigenvalue is xi + i - 1. (A
/// variant with chi - (xi - i + 1) circulates; it fails the root property
/// h_j(flowed) = 0 for every i >= 2 and is not what the closed-form labels
/// solve, so the derived map is used.)
pub fn flow_weight(hw: &HighestWeight, top_dim: u32, level: &Scalar) -> HighestWeight {
    assert!(top_dim >= 1);
    let kap = (&(level + level) + &Scalar::from_int(3)).scale_rational(&Rational::new(1, 3));
    let shift = Scalar::from_int(top_dim as i64 - 1);
    let xi = &(&hw.xi + &shift) - &kap;
    let chi = &(&hw.chi - &(&hw.xi + &shift)) + &kap;
    HighestWeight::new(xi, chi)
}

/// Central charge c(k) = -4(k+1)(2k+3)/(k+3); the level k = -3 is a pole.
pub fn central_charge(level: &Scalar) -> Result<Scalar> {
    let num = {
        let k1 = level + &Scalar::from_int(1);
        let k2 = &(level + level) + &Scalar::from_int(3);
        (&k1 * &k2).scale_rational(&Rational::from_int(-4))
    };
    let den = level + &Scalar::from_int(3);
    if den.is_zero() {
        return Err(CoreError::PoleAtLevel("-3".into()));
    }
    num.divide(&den)
}

/// Both closed forms of the central charge at an exceptional level:
/// c(p/2 - 3) and -4(p-4)(p-3)/p, asserted equal.
pub fn central_charge_at_level(level: &Level) -> Result<Rational> {
    let from_k = central_charge(&Scalar::variable())?.specialize(&level.k)?;
    let p = level.p as i64;
    let from_p = Rational::new(-4 * (p - 4) * (p - 3), p);
    if from_k != from_p {
        return Err(CoreError::InvalidArgument(format!(
            "central charge forms disagree at p = {p}: {from_k} vs {from_p}"
        )));
    }
    Ok(from_k)
}

/// The admissible weight lam_{i,j} = (i-1) lam1 + (p-i-j-1) lam2 + k Lam0.
pub fn admissible_weight(i: u32, j: u32, level: &Level) -> Result<Sl3Weight> {
    check_labels(i, j, level)?;
    Ok(Sl3Weight::new(
        Rational::from_int(i as i64 - 1),
        Rational::from_int(level.p as i64 - i as i64 - j as i64 - 1),
        level.k.clone(),
    ))
}

fn check_labels(i: u32, j: u32, level: &Level) -> Result<()> {
    let p = level.p as i64;
    if !(1..=p - 2).contains(&(i as i64)) || !(1..=p - i as i64 - 1).contains(&(j as i64)) {
        return Err(CoreError::InvalidArgument(format!(
            "labels (i, j) = ({i}, {j}) outside 1 <= i <= p-2, 1 <= j <= p-i-1 at p = {p}"
        )));
    }
    Ok(())
}

/// xi read off an admissible weight: (lam | -lam1 + lam2).
pub fn xi_from_sl3(lam: &Sl3Weight) -> Rational {
    let m1 = Sl3Weight::new(Rational::from_int(-1), Rational::one(), Rational::zero());
    lam.ip(&m1)
}

/// chi read off an admissible weight:
/// (lam | lam + 2 rho)/(2(k+3)) - (lam | lam2), with rho = lam1 + lam2.
pub fn chi_from_sl3(lam: &Sl3Weight, level: &Level) -> Rational {
    let rho2 = Sl3Weight::new(
        Rational::from_int(2),
        Rational::from_int(2),
        Rational::zero(),
    );
    let shifted = Sl3Weight::new(&lam.a1 + &rho2.a1, &lam.a2 + &rho2.a2, Rational::zero());
    let casimir = lam.ip(&shifted);
    let two_k_three = &(&level.k + &Rational::from_int(3)) * &Rational::from_int(2);
    let l2 = Sl3Weight::new(Rational::zero(), Rational::one(), Rational::zero());
    &(&casimir / &two_k_three) - &lam.ip(&l2)
}

/// One entry of the classification table at an exceptional level.
#[derive(Clone, Debug, Serialize)]
pub struct SimpleModuleRecord {
    pub p: u64,
    pub i: u32,
    pub j: u32,
    pub hw: HighestWeight,
    pub lam: Sl3Weight,
}

/// All (p-1)(p-2)/2 simple-module records at level p, sorted by (i, j).
/// Construction cross-checks the root properties h_i = 0 and h_j(flowed) = 0
/// and the sl3 inner-product forms of (xi, chi) for every record.
pub fn enumerate_simples(p: u64) -> Result<Vec<SimpleModuleRecord>> {
    let level = Level::new(p)?;
    let k = level.k_scalar();
    let mut out = Vec::new();
    for i in 1..=(p as u32 - 2) {
        for j in 1..=(p as u32 - i - 1) {
            let hw = xi_chi(i, j, &k);
            let lam = admissible_weight(i, j, &level)?;

            let root = h_fun(i, &hw.xi, &hw.chi, &k)?;
            if !root.is_zero() {
                return Err(CoreError::InvalidArgument(format!(
                    "h_{i} does not vanish at (xi_{{{i},{j}}}, chi_{{{i},{j}}})"
                )));
            }
            let flowed = flow_weight(&hw, i, &k);
            let root_flowed = h_fun(j, &flowed.xi, &flowed.chi, &k)?;
            if !root_flowed.is_zero() {
                return Err(CoreError::InvalidArgument(format!(
                    "h_{j} does not vanish at the flowed weight of ({i}, {j})"
                )));
            }
            let xi_ip = xi_from_sl3(&lam);
            let chi_ip = chi_from_sl3(&lam, &level);
            if hw.xi.as_rational() != Some(xi_ip) || hw.chi.as_rational() != Some(chi_ip) {
                return Err(CoreError::InvalidArgument(format!(
                    "inner-product weight forms disagree with the closed forms at ({i}, {j})"
                )));
            }

            out.push(SimpleModuleRecord {
                p,
                i,
                j,
                hw,
                lam,
            });
        }
    }
    Ok(out)
}

/// Which shift of the first argument of h_{p-2} annihilates it at the vacuum
/// weight: the candidate shifts are -(2k+3)/2 and -(2k+3)/3. The flow map
/// says -(2k+3)/3; the report records both outcomes instead of silently
/// picking one.
#[derive(Clone, Debug, Serialize)]
pub struct CrucialShiftReport {
    pub p: u64,
    /// h_{p-2}(xi - (2k+3)/3, chi + (2k+3)/3) == 0
    pub third_shift_vanishes: bool,
    /// h_{p-2}(xi - (2k+3)/2, chi + (2k+3)/3) == 0
    pub half_shift_vanishes: bool,
}

pub fn crucial_shift_report(p: u64) -> Result<CrucialShiftReport> {
    let level = Level::new(p)?;
    let k = level.k_scalar();
    let hw = xi_chi(1, p as u32 - 2, &k);
    let two_k_three = &(&k + &k) + &Scalar::from_int(3);
    let chi = &hw.chi + &two_k_three.scale_rational(&Rational::new(1, 3));
    let third = h_fun(
        p as u32 - 2,
        &(&hw.xi - &two_k_three.scale_rational(&Rational::new(1, 3))),
        &chi,
        &k,
    )?;
    let half = h_fun(
        p as u32 - 2,
        &(&hw.xi - &two_k_three.scale_rational(&Rational::new(1, 2))),
        &chi,
        &k,
    )?;
    Ok(CrucialShiftReport {
        p,
        third_shift_vanishes: third.is_zero(),
        half_shift_vanishes: half.is_zero(),
    })
}
