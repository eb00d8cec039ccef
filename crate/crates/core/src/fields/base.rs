use num_complex::Complex64;

use super::{FieldDecomposition, Part};
use crate::field::{FieldPair, RealPairState, SpectralField};
use crate::functional::p_functional;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `(-i|D| eta, i|D| psi)`.
pub fn d1(pair: &FieldPair) -> FieldPair {
    FieldPair::new_unchecked(pair.first.lambda().scale(-I), pair.second.lambda().scale(I))
}

fn lambda_sq_pairing(x: &SpectralField, y: &SpectralField) -> Complex64 {
    x.lambda().pairing_same(&y.lambda())
}

/// `(i/4)(<|D|psi, |D|psi> - <|D|eta, |D|eta>) (psi, eta)`.
pub fn b3(pair: &FieldPair) -> FieldPair {
    let c = I * 0.25 * (lambda_sq_pairing(&pair.second, &pair.second) - lambda_sq_pairing(&pair.first, &pair.first));
    FieldPair::new_unchecked(pair.second.scale(c), pair.first.scale(c))
}

/// Derivative of [`b3`] at `pair` in the direction `h`.
pub fn b3_differential(pair: &FieldPair, h: &FieldPair) -> FieldPair {
    let (eta, psi) = (&pair.first, &pair.second);
    let c = I * 0.25 * (lambda_sq_pairing(psi, psi) - lambda_sq_pairing(eta, eta));
    let dc = I * 0.5 * (lambda_sq_pairing(psi, &h.second) - lambda_sq_pairing(eta, &h.first));
    FieldPair::new_unchecked(
        psi.scale(dc).axpy(c, &h.second),
        eta.scale(dc).axpy(c, &h.first),
    )
}

/// The `(eta, psi)` system `sqrt(1+2P) D1 + B3 / (1+2P)`.
pub fn rhs_eta_psi(pair: &FieldPair) -> FieldPair {
    let p = p_functional(pair);
    &d1(pair).scale_re((1.0 + 2.0 * p).sqrt()) + &b3(pair).scale_re(1.0 / (1.0 + 2.0 * p))
}

/// `X = D1 + Dge3 + B3 + Rge5`.
pub fn decompose_eta_psi(pair: &FieldPair) -> FieldDecomposition {
    let p = p_functional(pair);
    let d = d1(pair);
    let b = b3(pair);
    let dge3 = d.scale_re((1.0 + 2.0 * p).sqrt() - 1.0);
    let rge5 = b.scale_re(-2.0 * p / (1.0 + 2.0 * p));
    FieldDecomposition::new(vec![(Part::D1, d), (Part::Dge3, dge3), (Part::B3, b), (Part::Rge5, rge5)], Some(p))
}

/// The cubic `(f, g)` system.
pub fn rhs_fg(pair: &FieldPair) -> FieldPair {
    let s = &pair.first + &pair.second;
    let ls = s.lambda();
    let c = ls.pairing_same(&s) * 0.25;
    let df = pair.first.lambda().scale(-I).axpy(-I * c, &ls);
    let dg = pair.second.lambda().scale(I).axpy(I * c, &ls);
    FieldPair::new_unchecked(df, dg)
}

/// `(v, -(1 + <|D|u, |D|u>) |D|^2 u)`.
pub fn rhs_physical(state: &RealPairState) -> RealPairState {
    let u = &state.position;
    let lu = u.lambda();
    let a = 1.0 + lu.pairing_same(&lu).re;
    RealPairState { position: state.velocity.clone(), velocity: u.lambda_pow(2.0).scale_re(-a) }
}
