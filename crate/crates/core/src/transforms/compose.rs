use super::{phi1, phi1_inverse, phi2, phi2_inverse, phi3, phi3_inverse, phi4, phi4_inverse, phi5, phi5_inverse};
use crate::error::Result;
use super::phi5::check_ball;
use crate::field::{FieldPair, RealPairState};
use crate::functional::RegularityParams;

/// Normal-form variables to `(eta, psi)`: the quartic then the quadratic
/// transformation.
pub fn to_eta_psi(y: &FieldPair, reg: &RegularityParams) -> Result<FieldPair> {
    check_ball(y, reg.m1, reg.delta)?;
    Ok(phi4(&phi5(y)))
}

/// Normal-form variables to `(f, g)`.
pub fn phi_next(y: &FieldPair, reg: &RegularityParams) -> Result<FieldPair> {
    Ok(phi3(&to_eta_psi(y, reg)?))
}

pub fn phi_next_inverse(fg: &FieldPair, reg: &RegularityParams) -> Result<FieldPair> {
    phi5_inverse(&phi4_inverse(&phi3_inverse(fg), reg.m0)?, reg.m1, reg.delta)
}

/// Normal-form variables to the physical position and velocity.
pub fn compose_full(y: &FieldPair, reg: &RegularityParams) -> Result<RealPairState> {
    let uv = phi1(&phi2(&phi_next(y, reg)?));
    Ok(RealPairState::from_pair_unchecked(uv))
}

pub fn compose_full_inverse(state: &RealPairState, reg: &RegularityParams) -> Result<FieldPair> {
    phi_next_inverse(&phi2_inverse(&phi1_inverse(&state.as_pair())), reg)
}
