use std::sync::OnceLock;

use num_complex::Complex64;

use super::base::d1;
use super::plus::{p_plus, x3_plus, x5_plus, x_plus};
use super::{FieldDecomposition, Part};
use crate::error::Result;
use crate::field::FieldPair;
use crate::functional::RegularityParams;
use crate::kernel::{eval_at, with_mirrors, QuarticKernel, Slot, Term, W5Kernel};
use crate::transforms::{neumann_inverse_apply, phi5, quartic_k_apply, Margin};

use Slot::{U, V};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn w5_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| {
        let t = |k, p0, p1, target| Term::quartic(I, QuarticKernel::W5(k), p0, p1, target, 0);
        with_mirrors(&[
            t(W5Kernel::EqualRadii, (U, U), (V, V), U),
            t(W5Kernel::SumRadii, (U, U), (U, U), V),
            t(W5Kernel::EqualOuter, (U, U), (U, V), V),
            t(W5Kernel::DifferenceRadii, (U, U), (V, V), V),
        ])
    })
}

/// The resonant quintic part left after the second normalisation.
pub fn w5(pair: &FieldPair) -> FieldPair {
    eval_at(w5_terms(), pair)
}

fn margin(pair: &FieldPair, reg: &RegularityParams) -> Margin {
    Margin { norm: pair.sobolev_norm(reg.m1), limit: reg.delta }
}

/// `N r = (I + K5(u,v))^{-1} r`.
fn n_apply(pair: &FieldPair, rhs: &FieldPair, reg: &RegularityParams) -> Result<FieldPair> {
    neumann_inverse_apply(|h| quartic_k_apply(pair, h), rhs, margin(pair, reg))
}

/// `W = (I + K5(u,v))^{-1} X+(Phi5(u,v))`.
pub fn w_full(pair: &FieldPair, reg: &RegularityParams) -> Result<FieldDecomposition> {
    let w = n_apply(pair, &x_plus(&phi5(pair), reg)?, reg)?;
    let p = p_plus(&phi5(pair));
    let d = d1(pair);
    let x3 = x3_plus(pair);
    let pd = d.scale_re(p);
    let px3 = x3.scale_re(p);
    let w5v = w5(pair);
    let rest = &(&(&(&(&w - &d) - &x3) - &pd) - &px3) - &w5v;
    Ok(FieldDecomposition::new(
        vec![(Part::D1, d), (Part::X3p, x3), (Part::PD1, pd), (Part::PX3p, px3), (Part::W5, w5v), (Part::Wge7, rest)],
        Some(p),
    ))
}

/// The remainder of degree at least seven, obtained two ways.
#[derive(Clone, Debug)]
pub struct WGeq7 {
    /// Exact `W` minus its lower-order parts.
    pub by_difference: FieldPair,
    /// Sum of the rearranged pieces, each built from the homological
    /// identity rather than from `W` itself.
    pub by_formula: FieldPair,
    /// `l2` norm of the full `W`, the scale for comparing the two.
    pub w_norm: f64,
}

impl WGeq7 {
    pub fn discrepancy(&self) -> f64 {
        (&self.by_difference - &self.by_formula).sobolev_norm(0.0)
    }

    pub fn relative_discrepancy(&self) -> f64 {
        if self.w_norm == 0.0 {
            self.discrepancy()
        } else {
            self.discrepancy() / self.w_norm
        }
    }
}

pub fn w_geq7(pair: &FieldPair, reg: &RegularityParams) -> Result<WGeq7> {
    let full = w_full(pair, reg)?;
    let by_difference = full.get(Part::Wge7).expect("part present").clone();
    let w_norm = full.total().sobolev_norm(0.0);

    let moved = phi5(pair);
    let s_hat = full.scalar_p.expect("scalar part");
    let one_s = 1.0 + s_hat;
    let n = |r: &FieldPair| n_apply(pair, r, reg);
    let l = |r: &FieldPair| -> Result<FieldPair> { Ok(&n(r)? - r) };

    let x3 = x3_plus(pair);
    let x5 = x5_plus(pair);
    let x3_moved = x3_plus(&moved);
    let x5_moved = x5_plus(&moved);
    let xp_moved = x_plus(&moved, reg)?;
    let xge7_moved =
        &(&xp_moved - &(&d1(&moved) + &x3_moved).scale_re(one_s)) - &x5_moved;
    let gap = &w5(pair) - &x5;

    let mut sum = l(&gap)?.scale_re(one_s);
    sum = &sum + &gap.scale_re(s_hat);
    sum = &sum + &l(&x3.scale_re(one_s))?;
    sum = &sum + &l(&x5)?;
    sum = &sum + &n(&(&x3_moved - &x3).scale_re(one_s))?;
    sum = &sum + &n(&(&x5_moved - &x5))?;
    sum = &sum + &n(&xge7_moved)?;
    Ok(WGeq7 { by_difference, by_formula: sum, w_norm })
}
