use crate::error::{Error, Result};
use crate::field::FieldPair;

/// Stop once a series term falls below this fraction of the right-hand side.
pub const NEUMANN_TOL: f64 = 1e-15;
/// Consecutive terms shrinking by less than this factor signal divergence.
pub const NEUMANN_MAX_RATIO: f64 = 0.99;
const NEUMANN_MAX_TERMS: usize = 500;

/// A state norm that must stay below `limit` for the series to contract.
#[derive(Clone, Copy, Debug)]
pub struct Margin {
    pub norm: f64,
    pub limit: f64,
}

/// `(I + K)^{-1} rhs = sum_n (-K)^n rhs`.
pub fn neumann_inverse_apply(k: impl Fn(&FieldPair) -> FieldPair, rhs: &FieldPair, margin: Margin) -> Result<FieldPair> {
    if !(margin.norm <= margin.limit) {
        return Err(Error::OutsideBall(format!("norm {} exceeds {}", margin.norm, margin.limit)));
    }
    let scale = rhs.sobolev_norm(0.0);
    if scale == 0.0 {
        return Ok(rhs.clone());
    }
    let mut sum = rhs.clone();
    let mut term = rhs.clone();
    let mut prev = scale;
    for n in 1..=NEUMANN_MAX_TERMS {
        term = -&k(&term);
        let size = term.sobolev_norm(0.0);
        sum = &sum + &term;
        if size <= NEUMANN_TOL * scale {
            return Ok(sum);
        }
        if n > 2 && size >= NEUMANN_MAX_RATIO * prev {
            return Err(Error::Convergence(format!("Neumann series stalls at term {n} (ratio {})", size / prev)));
        }
        prev = size;
    }
    Err(Error::Convergence(format!("Neumann series did not converge in {NEUMANN_MAX_TERMS} terms")))
}
