//! The quartic transformation `(u, v) -> (u, v) + M(u, v)(u, v)` whose
//! coefficients remove the non-resonant quintic terms.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::phi4::picard;
use crate::coefficients::QuinticKind;
use crate::error::{Error, Result};
use crate::field::FieldPair;
use crate::kernel::{differentiate, eval_at, eval_with_tangent, operator_part, with_mirrors, QuarticKernel, Slot, Term};

use Slot::{U, V};

fn nf(c: QuinticKind, p0: (Slot, Slot), p1: (Slot, Slot), target: Slot) -> Term {
    Term::quartic(Complex64::new(1.0, 0.0), QuarticKernel::Nf(c), p0, p1, target, 0)
}

/// First row `M11 u + M12 v`; the second row is the mirror image.
pub(crate) fn quartic_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| {
        use QuinticKind::*;
        with_mirrors(&[
            nf(A11, (U, U), (U, U), U),
            nf(C11, (U, U), (V, V), U),
            nf(F11, (V, V), (V, V), U),
            nf(A12, (U, U), (U, U), V),
            nf(B12, (U, U), (U, V), V),
            nf(C12, (U, U), (V, V), V),
            nf(D12, (U, V), (V, V), V),
            nf(F12, (V, V), (V, V), V),
        ])
    })
}

fn operator_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| operator_part(quartic_terms()))
}

fn derivative_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| differentiate(quartic_terms()))
}

/// `M(u, v)` applied to a tangent pair.
pub fn quartic_m_apply(y: &FieldPair, h: &FieldPair) -> FieldPair {
    eval_with_tangent(operator_terms(), y, h)
}

/// `M(u, v)(u, v)`.
pub fn quartic_m_self(y: &FieldPair) -> FieldPair {
    eval_at(quartic_terms(), y)
}

/// Derivative of `M(y) y` applied to a tangent pair.
pub fn quartic_k_apply(y: &FieldPair, h: &FieldPair) -> FieldPair {
    eval_with_tangent(derivative_terms(), y, h)
}

/// `E = K - M` applied to a tangent pair.
pub fn quartic_e_apply(y: &FieldPair, h: &FieldPair) -> FieldPair {
    &quartic_k_apply(y, h) - &quartic_m_apply(y, h)
}

pub(crate) fn check_ball(y: &FieldPair, m1: f64, delta: f64) -> Result<()> {
    let n = y.sobolev_norm(m1);
    if n > delta {
        return Err(Error::OutsideBall(format!("m1 norm {n} exceeds {delta}")));
    }
    Ok(())
}

pub fn phi5(y: &FieldPair) -> FieldPair {
    y + &quartic_m_self(y)
}

/// Differential `(I + K(y)) h`.
pub fn phi5_differential_apply(y: &FieldPair, h: &FieldPair) -> FieldPair {
    h + &quartic_k_apply(y, h)
}

/// Fixed point of `u = w - M(u) u`.
pub fn phi5_inverse(w: &FieldPair, m1: f64, delta: f64) -> Result<FieldPair> {
    check_ball(w, m1, delta)?;
    picard(w, m1, quartic_m_self)
}
