use std::sync::OnceLock;

use num_complex::Complex64;

use super::base::{b3, b3_differential, d1, rhs_eta_psi};
use super::{FieldDecomposition, Part};
use crate::error::{Error, Result};
use crate::field::{FieldPair, SpectralField};
use crate::functional::{p_functional, q_functional, RegularityParams};
use crate::kernel::{eval_at, with_mirrors, QuadKernel, QuarticKernel, Slot, Term, YKernel};
use crate::transforms::{k_apply, m_self, neumann_inverse_apply, phi4, Margin, PHI4_BALL};

use Slot::{U, V};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn x3_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| with_mirrors(&[Term::quad(-I * 0.25, QuadKernel::Resonant, (U, U), V, 0)]))
}

/// Resonant cubic part: first component `-(i/4) sum_{|j|=|k|} w_j w_-j |j|^2 z_k`.
pub fn x3_plus(pair: &FieldPair) -> FieldPair {
    eval_at(x3_terms(), pair)
}

/// The eight families of collected quintic monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum YLabel {
    Y4_11,
    Y2_11,
    Y0_11,
    Y4_12,
    Y3_12,
    Y2_12,
    Y1_12,
    Y0_12,
}

impl YLabel {
    pub const ALL: [YLabel; 8] = [
        YLabel::Y4_11,
        YLabel::Y2_11,
        YLabel::Y0_11,
        YLabel::Y4_12,
        YLabel::Y3_12,
        YLabel::Y2_12,
        YLabel::Y1_12,
        YLabel::Y0_12,
    ];

    pub fn has_symmetrized(self) -> bool {
        matches!(self, YLabel::Y4_11 | YLabel::Y0_11 | YLabel::Y4_12 | YLabel::Y0_12)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct YTermKind {
    label: YLabel,
    symmetrized: bool,
}

impl YTermKind {
    pub fn new(label: YLabel, symmetrized: bool) -> Result<Self> {
        if symmetrized && !label.has_symmetrized() {
            return Err(Error::InvalidArgument(format!("{label:?} has no symmetrised form")));
        }
        Ok(Self { label, symmetrized })
    }

    pub fn label(&self) -> YLabel {
        self.label
    }

    pub fn symmetrized(&self) -> bool {
        self.symmetrized
    }

    fn term(&self) -> Term {
        use YKernel as K;
        let (kernel, p0, p1, target) = match (self.label, self.symmetrized) {
            (YLabel::Y4_11, false) => (K::Y4_11, (U, U), (U, U), U),
            (YLabel::Y4_11, true) => (K::Y4_11Sym, (U, U), (U, U), U),
            (YLabel::Y2_11, _) => (K::Y2_11, (U, U), (V, V), U),
            (YLabel::Y0_11, false) => (K::Y0_11, (V, V), (V, V), U),
            (YLabel::Y0_11, true) => (K::Y0_11Sym, (V, V), (V, V), U),
            (YLabel::Y4_12, false) => (K::Y4_12, (U, U), (U, U), V),
            (YLabel::Y4_12, true) => (K::Y4_12Sym, (U, U), (U, U), V),
            (YLabel::Y3_12, _) => (K::Y3_12, (U, U), (U, V), V),
            (YLabel::Y2_12, _) => (K::Y2_12, (U, U), (V, V), V),
            (YLabel::Y1_12, _) => (K::Y1_12, (U, V), (V, V), V),
            (YLabel::Y0_12, false) => (K::Y0_12, (V, V), (V, V), V),
            (YLabel::Y0_12, true) => (K::Y0_12Sym, (V, V), (V, V), V),
        };
        Term::quartic(I, QuarticKernel::Y(kernel), p0, p1, target, 0)
    }
}

/// First component of one collected quintic family.
pub fn y_term(kind: YTermKind, pair: &FieldPair) -> SpectralField {
    eval_at(&[kind.term()], pair).first
}

fn x5_terms() -> &'static [Term] {
    static T: OnceLock<Vec<Term>> = OnceLock::new();
    T.get_or_init(|| {
        let first: Vec<Term> =
            YLabel::ALL.iter().map(|&l| YTermKind { label: l, symmetrized: false }.term()).collect();
        with_mirrors(&first)
    })
}

/// Sum of the first components of the eight families.
pub fn y_terms_first(pair: &FieldPair) -> SpectralField {
    let terms: Vec<Term> = x5_terms().iter().filter(|t| t.row == 0).copied().collect();
    eval_at(&terms, pair).first
}

/// Quintic part of the once-normalised field, from the collected families.
pub fn x5_plus(pair: &FieldPair) -> FieldPair {
    eval_at(x5_terms(), pair)
}

/// `-K X3+ - 3Q B3 + B3'[M(w,z)(w,z)]`, assembled from its definition.
pub fn x5_plus_from_definition(pair: &FieldPair) -> FieldPair {
    let x3 = x3_plus(pair);
    let kx3 = k_apply(pair, &x3);
    let q = q_functional(pair);
    let b = b3(pair);
    let db = b3_differential(pair, &m_self(pair));
    &(&db - &kx3) - &b.scale_re(3.0 * q)
}

/// Scalar phase factor `sqrt(1 + 2P(Phi4(w,z))) - 1`.
pub fn p_plus(pair: &FieldPair) -> f64 {
    (1.0 + 2.0 * p_functional(&phi4(pair))).sqrt() - 1.0
}

/// `(I + K(w,z))^{-1} X(Phi4(w,z))`.
pub fn x_plus(pair: &FieldPair, reg: &RegularityParams) -> Result<FieldPair> {
    let rhs = rhs_eta_psi(&phi4(pair));
    let margin = Margin { norm: pair.sobolev_norm(reg.m0), limit: PHI4_BALL };
    neumann_inverse_apply(|h| k_apply(pair, h), &rhs, margin)
}

/// `X+ = (1 + P)(D1 + X3+) + X5+ + Xge7+`, the last part by difference.
pub fn x_plus_full(pair: &FieldPair, reg: &RegularityParams) -> Result<FieldDecomposition> {
    let full = x_plus(pair, reg)?;
    let p = p_plus(pair);
    let d = d1(pair);
    let x3 = x3_plus(pair);
    let x5 = x5_plus(pair);
    let pd = d.scale_re(p);
    let px3 = x3.scale_re(p);
    let rest = &(&(&(&(&full - &d) - &x3) - &pd) - &px3) - &x5;
    Ok(FieldDecomposition::new(
        vec![(Part::D1, d), (Part::X3p, x3), (Part::PD1, pd), (Part::PX3p, px3), (Part::X5p, x5), (Part::Xge7p, rest)],
        Some(p),
    ))
}
