//! Right-hand sides of every system in the chain and their splittings by
//! homogeneity degree.

mod base;
mod energy;
mod normal;
mod plus;

use std::fmt;

pub use base::{b3, b3_differential, d1, decompose_eta_psi, rhs_eta_psi, rhs_fg, rhs_physical};
pub use energy::{energy_rate_total, energy_rate_z6, EnergyRate, Z6_IMAG_TOL};
pub use normal::{w5, w_full, w_geq7, WGeq7};
pub use plus::{
    p_plus, x3_plus, x5_plus, x5_plus_from_definition, x_plus, x_plus_full, y_term, y_terms_first, YLabel, YTermKind,
};

use crate::field::FieldPair;

/// Labels of the pieces a right-hand side is split into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    D1,
    Dge3,
    B3,
    Rge5,
    X3p,
    /// `P D1` with `P` the scalar phase factor.
    PD1,
    PX3p,
    X5p,
    Xge7p,
    W5,
    Wge7,
}

impl Part {
    pub fn name(self) -> &'static str {
        match self {
            Part::D1 => "D1",
            Part::Dge3 => "Dge3",
            Part::B3 => "B3",
            Part::Rge5 => "Rge5",
            Part::X3p => "X3p",
            Part::PD1 => "PD1",
            Part::PX3p => "PX3p",
            Part::X5p => "X5p",
            Part::Xge7p => "Xge7p",
            Part::W5 => "W5",
            Part::Wge7 => "Wge7",
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Labelled parts whose sum is a full right-hand side, plus the scalar
/// phase factor where one is involved.
#[derive(Clone, Debug)]
pub struct FieldDecomposition {
    parts: Vec<(Part, FieldPair)>,
    pub scalar_p: Option<f64>,
}

impl FieldDecomposition {
    pub(crate) fn new(parts: Vec<(Part, FieldPair)>, scalar_p: Option<f64>) -> Self {
        Self { parts, scalar_p }
    }

    pub fn get(&self, part: Part) -> Option<&FieldPair> {
        self.parts.iter().find(|(p, _)| *p == part).map(|(_, f)| f)
    }

    pub fn parts(&self) -> &[(Part, FieldPair)] {
        &self.parts
    }

    pub fn total(&self) -> FieldPair {
        let mut it = self.parts.iter();
        let mut acc = it.next().expect("nonempty decomposition").1.clone();
        for (_, f) in it {
            acc = &acc + f;
        }
        acc
    }
}
