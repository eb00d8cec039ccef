use crate::field::FieldPair;
use crate::functional::{p_functional, q_functional, rho};

/// `(1 - r^2)^{-1/2} [[1, r], [r, 1]]` applied to a pair.
fn mix(pair: &FieldPair, r: f64) -> FieldPair {
    let c = 1.0 / (1.0 - r * r).sqrt();
    let first = pair.first.axpy(r.into(), &pair.second).scale_re(c);
    let second = pair.second.axpy(r.into(), &pair.first).scale_re(c);
    FieldPair::new_unchecked(first, second)
}

/// `(eta, psi) -> (f, g)` with `r = rho(P(eta, psi))`; then `Q(f, g) = P(eta, psi)`.
pub fn phi3(pair: &FieldPair) -> FieldPair {
    mix(pair, rho(p_functional(pair)))
}

pub fn phi3_inverse(pair: &FieldPair) -> FieldPair {
    mix(pair, -rho(q_functional(pair)))
}
