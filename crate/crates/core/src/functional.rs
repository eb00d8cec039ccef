//! Scalar functions and functionals shared by the transformations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldPair, RealPairState};

/// Norm exponents and ball radius attached to a spatial dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularityParams {
    pub dim: usize,
    pub m0: f64,
    pub m1: f64,
    pub delta: f64,
}

/// Radius of the ball on which the quartic transformation is used.
pub const DEFAULT_DELTA: f64 = 0.05;

impl RegularityParams {
    pub fn for_dimension(dim: usize) -> Result<Self> {
        match dim {
            1 => Ok(Self { dim, m0: 1.0, m1: 1.0, delta: DEFAULT_DELTA }),
            2 | 3 => Ok(Self { dim, m0: 1.5, m1: 2.0, delta: DEFAULT_DELTA }),
            _ => Err(Error::InvalidArgument(format!("dimension {dim} not in 1..=3"))),
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }
}

/// `rho(x) = -x / (1 + x + sqrt(1 + 2x))`, defined for `x >= -1/2`.
pub fn rho(x: f64) -> f64 {
    -x / (1.0 + x + (1.0 + 2.0 * x).sqrt())
}

/// [`rho`] restricted to its stated domain `x >= 0`.
pub fn rho_eval(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!("rho needs x >= 0, got {x}")));
    }
    Ok(rho(x))
}

/// [`phi`] restricted to `y >= 0`, with the residual checked.
pub fn phi_inverse_eval(y: f64) -> Result<f64> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(Error::InvalidArgument(format!("phi needs finite y >= 0, got {y}")));
    }
    let x = phi(y);
    let residual = (x * (1.0 + 2.0 * x).sqrt() - y).abs();
    if !(residual <= 1e-13 * y.max(f64::MIN_POSITIVE)) {
        return Err(Error::Convergence(format!("phi({y}) residual {residual:e}")));
    }
    Ok(x)
}

const PHI_TOL: f64 = 1e-14;
const PHI_MAX_ITER: usize = 100;

/// Smallest value of `x sqrt(1 + 2x)` on its increasing branch.
pub const PHI_DOMAIN_MIN: f64 = -0.19245008972987526;

/// Inverse of `x -> x sqrt(1 + 2x)` on `x >= -1/3`. Returns NaN below
/// [`PHI_DOMAIN_MIN`].
pub fn phi(y: f64) -> f64 {
    if y.is_nan() || y < PHI_DOMAIN_MIN {
        return f64::NAN;
    }
    if y == 0.0 {
        return 0.0;
    }
    let g = |x: f64| x * (1.0 + 2.0 * x).sqrt() - y;
    let (mut lo, mut hi): (f64, f64) = if y > 0.0 { (0.0, y) } else { (-1.0 / 3.0, y) };
    let mut x = y / (1.0 + y);
    for _ in 0..PHI_MAX_ITER {
        let s = (1.0 + 2.0 * x).sqrt();
        let gx = x * s - y;
        if gx > 0.0 {
            hi = hi.min(x);
        } else {
            lo = lo.max(x);
        }
        let step = gx * s / (1.0 + 3.0 * x);
        let mut next = x - step;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= PHI_TOL * x.abs().max(f64::MIN_POSITIVE) {
            return next;
        }
        x = next;
        if g(x) == 0.0 {
            return x;
        }
    }
    x
}

/// `1/4 <|D|(eta + psi), eta + psi>`, complex for a general pair.
pub fn q_value(pair: &FieldPair) -> Complex64 {
    let s = &pair.first + &pair.second;
    s.lambda().pairing_same(&s) * 0.25
}

/// Real part of [`q_value`]; exact for conjugate pairs.
pub fn q_functional(pair: &FieldPair) -> f64 {
    q_value(pair).re
}

/// `P = phi(Q)`.
pub fn p_functional(pair: &FieldPair) -> f64 {
    phi(q_functional(pair))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianKind {
    /// `1/2<v,v> + 1/2<Du,Du> + 1/4<Du,Du>^2` on a real position/velocity state.
    Physical,
    /// Energy in the symmetrised real variables `(q, p)`.
    H1,
    /// Energy in the complex variables `(f, g)`.
    H2,
    /// Energy in the variables `(eta, psi)`.
    H3,
}

pub enum HamiltonianState<'a> {
    Real(&'a RealPairState),
    Conjugate(&'a FieldPair),
}

/// Energy of a state; the state kind must match the Hamiltonian.
pub fn hamiltonian(kind: HamiltonianKind, state: HamiltonianState<'_>) -> Result<f64> {
    match (kind, state) {
        (HamiltonianKind::Physical, HamiltonianState::Real(s)) => Ok(h_physical(&s.position, &s.velocity)),
        (HamiltonianKind::H1, HamiltonianState::Real(s)) => Ok(h1(&s.position, &s.velocity)),
        (HamiltonianKind::H2, HamiltonianState::Conjugate(p)) => Ok(h2(p)),
        (HamiltonianKind::H3, HamiltonianState::Conjugate(p)) => Ok(h3(p)),
        (k, _) => Err(Error::InvalidArgument(format!("{k:?} evaluated on the wrong state kind"))),
    }
}

use crate::field::SpectralField;

pub fn h_physical(u: &SpectralField, v: &SpectralField) -> f64 {
    let lu = u.lambda();
    let e = lu.pairing_same(&lu).re;
    0.5 * v.pairing_same(v).re + 0.5 * e + 0.25 * e * e
}

pub fn h1(q: &SpectralField, p: &SpectralField) -> f64 {
    let a = q.lambda().pairing_same(q).re;
    0.5 * p.lambda().pairing_same(p).re + 0.5 * a + 0.25 * a * a
}

pub fn h2(pair: &FieldPair) -> f64 {
    let (f, g) = (&pair.first, &pair.second);
    let s = f + g;
    let a = s.lambda().pairing_same(&s);
    (f.lambda().pairing_same(g) + a * a / 16.0).re
}

pub fn h3(pair: &FieldPair) -> f64 {
    let (eta, psi) = (&pair.first, &pair.second);
    let p = p_functional(pair);
    let r = (1.0 + 2.0 * p).sqrt();
    let le = eta.lambda();
    let diag = le.pairing_same(eta) + psi.lambda().pairing_same(psi);
    let cross = le.pairing_same(psi);
    (diag * (-p / (2.0 * r)) + cross * ((1.0 + p) / r)).re + p * p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rho_and_phi_series() {
        for &x in &[1e-3, 1e-4] {
            let y: f64 = x;
            let series = y - y * y + 2.5 * y * y * y;
            assert!((phi(y) - series).abs() < 10.0 * y.powi(4));
            // sqrt(1 + 2 phi(Q)) = 1 + Q - 3/2 Q^2 + ...
            let s = (1.0 + 2.0 * phi(y)).sqrt();
            assert!((s - (1.0 + y - 1.5 * y * y)).abs() < 10.0 * y.powi(3));
            assert!((rho(x) + x / 2.0).abs() < x * x);
        }
        assert_eq!(phi(0.0), 0.0);
        assert!(phi(-1.0).is_nan());
    }

    proptest! {
        #[test]
        fn phi_inverts(y in 0.0f64..50.0) {
            let x = phi(y);
            let back = x * (1.0 + 2.0 * x).sqrt();
            prop_assert!((back - y).abs() <= 1e-13 * y.max(1e-300) + 1e-300);
            prop_assert!(x >= 0.0 && x <= y);
        }

        #[test]
        fn phi_inverts_small_negative(y in -0.15f64..0.0) {
            let x = phi(y);
            prop_assert!((x * (1.0 + 2.0 * x).sqrt() - y).abs() <= 1e-14);
        }
    }
}
