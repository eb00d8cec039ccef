//! Coefficients of the quartic normal-form transformation and the small
//! divisors they contain.

pub mod divisors;
pub mod formulas;
mod scalar;

use std::fmt;
use std::str::FromStr;

pub use divisors::{
    coefficient_bound_check, divisor_report, divisor_scan, exact_p, sharpness_triples, BoundCheck, DivisorReport,
    SharpnessTriple, DEFAULT_BOUND_CONSTANT,
};
pub use formulas::Triple;
pub use scalar::Scalar;

use crate::error::{Error, Result};
use crate::lattice::ModeIndex;

/// The eight nonzero coefficient families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuinticKind {
    A11,
    C11,
    F11,
    A12,
    B12,
    C12,
    D12,
    F12,
}

impl QuinticKind {
    pub const ALL: [QuinticKind; 8] = [
        QuinticKind::A11,
        QuinticKind::C11,
        QuinticKind::F11,
        QuinticKind::A12,
        QuinticKind::B12,
        QuinticKind::C12,
        QuinticKind::D12,
        QuinticKind::F12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QuinticKind::A11 => "A11",
            QuinticKind::C11 => "C11",
            QuinticKind::F11 => "F11",
            QuinticKind::A12 => "A12",
            QuinticKind::B12 => "B12",
            QuinticKind::C12 => "C12",
            QuinticKind::D12 => "D12",
            QuinticKind::F12 => "F12",
        }
    }
}

impl fmt::Display for QuinticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuinticKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        QuinticKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown coefficient kind {s:?}")))
    }
}

/// Coefficient as a function of three squared radii.
pub fn nf5_coefficient_radii<T: Scalar>(kind: QuinticKind, j2: i64, l2: i64, k2: i64) -> Option<T> {
    let t = Triple::<T>::new(j2, l2, k2)?;
    Some(match kind {
        QuinticKind::A11 => formulas::a11(&t),
        QuinticKind::C11 => formulas::c11(&t),
        QuinticKind::F11 => formulas::f11(&t),
        QuinticKind::A12 => formulas::a12(&t),
        QuinticKind::B12 => formulas::b12(&t),
        QuinticKind::C12 => formulas::c12(&t),
        QuinticKind::D12 => formulas::d12(&t),
        QuinticKind::F12 => formulas::f12(&t),
    })
}

/// Coefficient at three lattice modes; it depends only on their radii.
pub fn nf5_coefficient(kind: QuinticKind, j: &ModeIndex, l: &ModeIndex, k: &ModeIndex) -> Result<f64> {
    if j.dim() != l.dim() || j.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: j.dim(), found: l.dim().max(k.dim()) });
    }
    Ok(nf5_coefficient_radii::<f64>(kind, j.norm_sq(), l.norm_sq(), k.norm_sq()).expect("f64 radius"))
}

/// The coefficient families with an optional additive corruption of one
/// family, used to check that verification rejects a wrong table.
#[derive(Clone, Debug, Default)]
pub struct CoefficientTable {
    perturbation: Option<(QuinticKind, i64, i64)>,
}

impl CoefficientTable {
    pub fn standard() -> Self {
        Self::default()
    }

    /// Adds `num/den` to every value of `kind`.
    pub fn perturbed(kind: QuinticKind, num: i64, den: i64) -> Self {
        Self { perturbation: Some((kind, num, den)) }
    }

    pub fn is_standard(&self) -> bool {
        self.perturbation.is_none()
    }

    pub fn value<T: Scalar>(&self, kind: QuinticKind, j2: i64, l2: i64, k2: i64) -> Option<T> {
        let v = nf5_coefficient_radii::<T>(kind, j2, l2, k2)?;
        match self.perturbation {
            Some((p, num, den)) if p == kind => Some(v + T::ratio(num, den)),
            _ => Some(v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn exact(kind: QuinticKind, j: i64, l: i64, k: i64) -> BigRational {
        nf5_coefficient_radii(kind, j * j, l * l, k * k).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn worked_values() {
        assert_eq!(exact(QuinticKind::A11, 1, 1, 1), q(1, 256));
        assert_eq!(exact(QuinticKind::F12, 1, 1, 1), q(-1, 32));
        assert_eq!(exact(QuinticKind::B12, 1, 1, 2), q(11, 64));
        assert_eq!(exact(QuinticKind::C12, 2, 1, 3), q(3, 32));
    }

    #[test]
    fn vanishing_denominators_give_zero() {
        // k = j + l
        assert_eq!(exact(QuinticKind::A12, 1, 2, 3), q(0, 1));
        // j = l
        assert_eq!(exact(QuinticKind::C11, 2, 2, 5), q(0, 1));
        // j = k
        assert_eq!(exact(QuinticKind::B12, 3, 1, 3), q(0, 1));
        // k = j - l
        assert_eq!(exact(QuinticKind::C12, 3, 1, 2), q(0, 1));
    }

    #[test]
    fn float_matches_exact() {
        for kind in QuinticKind::ALL {
            for j in 1..5 {
                for l in 1..5 {
                    for k in 1..5 {
                        let e: f64 = num_traits::ToPrimitive::to_f64(&exact(kind, j, l, k)).unwrap();
                        let f: f64 = nf5_coefficient_radii(kind, j * j, l * l, k * k).unwrap();
                        assert!((e - f).abs() <= 1e-14 * e.abs().max(1.0), "{kind} {j} {l} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn perturbation_hook() {
        let t = CoefficientTable::perturbed(QuinticKind::D12, 1, 1000);
        let v: BigRational = t.value(QuinticKind::D12, 1, 4, 9).unwrap();
        assert_eq!(v, exact(QuinticKind::D12, 1, 2, 3) + q(1, 1000));
        let w: BigRational = t.value(QuinticKind::A11, 1, 4, 9).unwrap();
        assert_eq!(w, exact(QuinticKind::A11, 1, 2, 3));
    }
}
