//! The chain of coordinate changes from the physical variables to the
//! quintic normal form.

mod compose;
mod linear;
mod neumann;
mod phi3;
pub mod phi4;
pub mod phi5;

pub use compose::{compose_full, compose_full_inverse, phi_next, phi_next_inverse, to_eta_psi};
pub use linear::{phi1, phi1_inverse, phi2, phi2_inverse};
pub use neumann::{neumann_inverse_apply, Margin, NEUMANN_MAX_RATIO, NEUMANN_TOL};
pub use phi3::{phi3, phi3_inverse};
pub use phi4::{a12, c12, e_apply, k_apply, m_apply, m_self, phi4, phi4_differential_apply, phi4_inverse, PHI4_BALL, PHI4_INVERSE_BALL};
pub use phi5::{phi5, phi5_differential_apply, phi5_inverse, quartic_e_apply, quartic_k_apply, quartic_m_apply, quartic_m_self};
