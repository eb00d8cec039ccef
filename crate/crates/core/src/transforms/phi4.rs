//! The transformation `(w, z) -> (w, z) + M(w, z)(w, z)` with `M` built from
//! the bilinear multipliers `A12` and `C12`.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldPair, SpectralField};
use crate::kernel::{
    aggregates, differentiate, eval_at, eval_with_tangent, operator_part, with_mirrors, QuadKernel, Slot, Term,
};

/// Largest `m0` norm at which `(I + K)` is inverted by its Neumann series.
pub const PHI4_BALL: f64 = 0.5;
/// Largest `m0` norm at which the inverse is computed.
pub const PHI4_INVERSE_BALL: f64 = 0.25;

const PICARD_TOL: f64 = 1e-13;
const PICARD_MAX_ITER: usize = 200;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `M(y) y`: first row `A12[w,w] z + C12[z,z] z`.
pub(crate) fn m_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| {
        with_mirrors(&[
            Term::quad(one(), QuadKernel::A12, (Slot::U, Slot::U), Slot::V, 0),
            Term::quad(one(), QuadKernel::C12, (Slot::V, Slot::V), Slot::V, 0),
        ])
    })
}

fn m_operator_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| operator_part(m_terms()))
}

fn k_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| differentiate(m_terms()))
}

fn e_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| {
        let ops = m_operator_terms();
        k_terms().iter().filter(|t| !ops.contains(t)).copied().collect()
    })
}

/// `sum_j u_j v_{-j} K(|j|, |k|) h_k` for a quadratic kernel.
fn bilinear(kernel: QuadKernel, u: &SpectralField, v: &SpectralField, h: &SpectralField) -> SpectralField {
    let ms = h.modes();
    let g = aggregates(u, v);
    let norms = ms.shell_norms();
    let m: Vec<Complex64> = norms
        .iter()
        .map(|&nc| norms.iter().zip(&g).map(|(&na, ga)| ga * kernel.eval(na, nc)).sum())
        .collect();
    SpectralField::from_fn(ms, |i, _| h.coeffs()[i] * m[ms.shell_of(i)])
}

/// `A12[u, v] h`, kernel `|j|^2 / (8(|j| - |k|))` off the diagonal `|j| = |k|`.
pub fn a12(u: &SpectralField, v: &SpectralField, h: &SpectralField) -> SpectralField {
    bilinear(QuadKernel::A12, u, v, h)
}

/// `C12[u, v] h`, kernel `|j|^2 / (8(|j| + |k|))`.
pub fn c12(u: &SpectralField, v: &SpectralField, h: &SpectralField) -> SpectralField {
    bilinear(QuadKernel::C12, u, v, h)
}

/// `M(w, z)` applied to a tangent pair.
pub fn m_apply(y: &FieldPair, h: &FieldPair) -> FieldPair {
    eval_with_tangent(m_operator_terms(), y, h)
}

/// `E(w, z)` applied to a tangent pair; `K = M + E`.
pub fn e_apply(y: &FieldPair, h: &FieldPair) -> FieldPair {
    eval_with_tangent(e_terms(), y, h)
}

/// `K(w, z) h`, the derivative of `M(y) y`.
pub fn k_apply(y: &FieldPair, h: &FieldPair) -> FieldPair {
    eval_with_tangent(k_terms(), y, h)
}

/// `M(y) y`.
pub fn m_self(y: &FieldPair) -> FieldPair {
    eval_at(m_terms(), y)
}

pub fn phi4(y: &FieldPair) -> FieldPair {
    y + &m_self(y)
}

/// Differential `(I + K(y)) h`.
pub fn phi4_differential_apply(y: &FieldPair, h: &FieldPair) -> FieldPair {
    h + &k_apply(y, h)
}

/// Fixed point of `w = eta - M(w) w`.
pub fn phi4_inverse(eta: &FieldPair, m0: f64) -> Result<FieldPair> {
    let n = eta.sobolev_norm(m0);
    if n > PHI4_INVERSE_BALL {
        return Err(Error::OutsideBall(format!("m0 norm {n} exceeds {PHI4_INVERSE_BALL}")));
    }
    picard(eta, m0, m_self)
}

pub(crate) fn picard(target: &FieldPair, s: f64, nonlinear: impl Fn(&FieldPair) -> FieldPair) -> Result<FieldPair> {
    let scale = target.sobolev_norm(s);
    if scale == 0.0 {
        return Ok(target.clone());
    }
    let mut w = target.clone();
    for _ in 0..PICARD_MAX_ITER {
        let next = target - &nonlinear(&w);
        let step = (&next - &w).sobolev_norm(s);
        w = next;
        if step <= PICARD_TOL * scale {
            return Ok(w);
        }
    }
    Err(Error::Convergence(format!("fixed-point iteration did not converge in {PICARD_MAX_ITER} steps")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_adds_two_aggregate_replacements_per_term() {
        assert_eq!(m_terms().len(), 4);
        assert_eq!(k_terms().len(), 12);
        assert_eq!(e_terms().len(), 8);
    }
}
