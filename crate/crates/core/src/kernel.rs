//! Radial multiplier operators built from sphere aggregates.
//!
//! Every nonlinear operator in this crate acts as
//! `h_k -> h_k * m(|k|)`, where `m` is a sum over spheres of a radial kernel
//! times aggregates `G_a(x, y) = sum_{|j| = a} x_j y_{-j}`. A term records
//! which fields feed the aggregates, which field is multiplied, and which
//! output component receives the result.

use std::sync::Arc;

use num_complex::Complex64;

use crate::coefficients::formulas::{w5, y, Triple};
use crate::coefficients::{nf5_coefficient_radii, QuinticKind};
use crate::field::{FieldPair, SpectralField};
use crate::modes::ModeSet;

/// Kernels of one sphere variable and the output radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadKernel {
    /// `|j|^2 / (8(|j| - |k|))`, zero on `|j| = |k|`.
    A12,
    /// `|j|^2 / (8(|j| + |k|))`.
    C12,
    /// `|j|^2` on `|j| = |k|`, zero elsewhere.
    Resonant,
}

impl QuadKernel {
    pub fn eval(self, j2: i64, k2: i64) -> f64 {
        let (j, k) = ((j2 as f64).sqrt(), (k2 as f64).sqrt());
        match self {
            QuadKernel::A12 => {
                if j2 == k2 {
                    0.0
                } else {
                    j2 as f64 / (8.0 * (j - k))
                }
            }
            QuadKernel::C12 => j2 as f64 / (8.0 * (j + k)),
            QuadKernel::Resonant => {
                if j2 == k2 {
                    j2 as f64
                } else {
                    0.0
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum YKernel {
    Y4_11,
    Y4_11Sym,
    Y2_11,
    Y0_11,
    Y0_11Sym,
    Y4_12,
    Y4_12Sym,
    Y3_12,
    Y2_12,
    Y1_12,
    Y0_12,
    Y0_12Sym,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum W5Kernel {
    EqualRadii,
    SumRadii,
    EqualOuter,
    DifferenceRadii,
}

/// Kernels of two sphere variables `(|j|, |l|)` and the output radius `|k|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuarticKernel {
    Nf(QuinticKind),
    Y(YKernel),
    W5(W5Kernel),
}

impl QuarticKernel {
    pub fn eval(self, j2: i64, l2: i64, k2: i64) -> f64 {
        match self {
            QuarticKernel::Nf(kind) => nf5_coefficient_radii::<f64>(kind, j2, l2, k2).expect("f64 radius"),
            QuarticKernel::Y(k) => {
                let t = Triple::<f64>::new(j2, l2, k2).expect("f64 radius");
                match k {
                    YKernel::Y4_11 => y::y4_11(&t),
                    YKernel::Y4_11Sym => y::y4_11_sym(&t),
                    YKernel::Y2_11 => y::y2_11(&t),
                    YKernel::Y0_11 => y::y0_11(&t),
                    YKernel::Y0_11Sym => y::y0_11_sym(&t),
                    YKernel::Y4_12 => y::y4_12(&t),
                    YKernel::Y4_12Sym => y::y4_12_sym(&t),
                    YKernel::Y3_12 => y::y3_12(&t),
                    YKernel::Y2_12 => y::y2_12(&t),
                    YKernel::Y1_12 => y::y1_12(&t),
                    YKernel::Y0_12 => y::y0_12(&t),
                    YKernel::Y0_12Sym => y::y0_12_sym(&t),
                }
            }
            QuarticKernel::W5(k) => {
                let t = Triple::<f64>::new(j2, l2, k2).expect("f64 radius");
                match k {
                    W5Kernel::EqualRadii => w5::equal_radii(&t),
                    W5Kernel::SumRadii => w5::sum_radii(&t),
                    W5Kernel::EqualOuter => w5::equal_outer(&t),
                    W5Kernel::DifferenceRadii => w5::difference_radii(&t),
                }
            }
        }
    }
}

/// Field slots: the base point `(U, V)` and a tangent `(A, B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    U = 0,
    V = 1,
    A = 2,
    B = 3,
}

impl Slot {
    /// Tangent slot of a base slot.
    pub fn tangent(self) -> Slot {
        match self {
            Slot::U => Slot::A,
            Slot::V => Slot::B,
            s => s,
        }
    }

    /// `U <-> V`, `A <-> B`.
    pub fn swapped(self) -> Slot {
        match self {
            Slot::U => Slot::V,
            Slot::V => Slot::U,
            Slot::A => Slot::B,
            Slot::B => Slot::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kernel {
    Quad(QuadKernel),
    Quartic(QuarticKernel),
}

/// `out[row]_k += coeff * target_k * sum_spheres kernel * prod G(pair)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub kernel: Kernel,
    /// One aggregate pair for quadratic kernels, two for quartic ones.
    pub pairs: [(Slot, Slot); 2],
    pub target: Slot,
    pub row: usize,
}

impl Term {
    pub fn quad(coeff: Complex64, kernel: QuadKernel, pair: (Slot, Slot), target: Slot, row: usize) -> Self {
        Self { coeff, kernel: Kernel::Quad(kernel), pairs: [pair, pair], target, row }
    }

    pub fn quartic(
        coeff: Complex64,
        kernel: QuarticKernel,
        p0: (Slot, Slot),
        p1: (Slot, Slot),
        target: Slot,
        row: usize,
    ) -> Self {
        Self { coeff, kernel: Kernel::Quartic(kernel), pairs: [p0, p1], target, row }
    }

    fn npairs(&self) -> usize {
        match self.kernel {
            Kernel::Quad(_) => 1,
            Kernel::Quartic(_) => 2,
        }
    }

    /// Image under the real structure: swap the two components and
    /// conjugate the coefficient.
    pub fn mirrored(&self) -> Self {
        let sw = |p: (Slot, Slot)| (p.0.swapped(), p.1.swapped());
        Self {
            coeff: self.coeff.conj(),
            kernel: self.kernel,
            pairs: [sw(self.pairs[0]), sw(self.pairs[1])],
            target: self.target.swapped(),
            row: 1 - self.row,
        }
    }
}

/// Terms followed by their mirror images.
pub fn with_mirrors(terms: &[Term]) -> Vec<Term> {
    terms.iter().copied().chain(terms.iter().map(Term::mirrored)).collect()
}

/// Operator part: the multiplied field becomes the tangent.
pub fn operator_part(terms: &[Term]) -> Vec<Term> {
    terms.iter().map(|t| Term { target: t.target.tangent(), ..*t }).collect()
}

/// Terms of the derivative of `y -> F(y)` in the tangent direction, where
/// `F` is given by terms over base slots only.
pub fn differentiate(terms: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(terms.len() * 5);
    for t in terms {
        out.push(Term { target: t.target.tangent(), ..*t });
        for p in 0..t.npairs() {
            let (a, b) = t.pairs[p];
            let mut t1 = *t;
            t1.pairs[p] = (a.tangent(), b);
            let mut t2 = *t;
            t2.pairs[p] = (a, b.tangent());
            if t.npairs() == 1 {
                t1.pairs[1] = t1.pairs[0];
                t2.pairs[1] = t2.pairs[0];
            }
            out.push(t1);
            out.push(t2);
        }
    }
    out
}

/// Sphere aggregates `G_a(x, y)` for every sphere of the support.
pub fn aggregates(x: &SpectralField, y: &SpectralField) -> Vec<Complex64> {
    let ms = x.modes();
    let (xc, yc) = (x.coeffs(), y.coeffs());
    let mut g = vec![Complex64::new(0.0, 0.0); ms.shells().len()];
    for (a, shell) in ms.shells().iter().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for &i in &shell.members {
            acc += xc[i] * yc[ms.neg_index(i)];
        }
        g[a] = acc;
    }
    g
}

/// Fields bound to the four slots, with lazily computed aggregates.
pub struct SlotFields<'a> {
    fields: [Option<&'a SpectralField>; 4],
    cache: std::cell::RefCell<Vec<((Slot, Slot), Arc<Vec<Complex64>>)>>,
}

impl<'a> SlotFields<'a> {
    pub fn base(y: &'a FieldPair) -> Self {
        Self { fields: [Some(&y.first), Some(&y.second), None, None], cache: Default::default() }
    }

    pub fn with_tangent(y: &'a FieldPair, h: &'a FieldPair) -> Self {
        Self { fields: [Some(&y.first), Some(&y.second), Some(&h.first), Some(&h.second)], cache: Default::default() }
    }

    fn field(&self, s: Slot) -> &'a SpectralField {
        self.fields[s as usize].expect("slot bound")
    }

    fn aggregate(&self, p: (Slot, Slot)) -> Arc<Vec<Complex64>> {
        let key = if p.0 <= p.1 { p } else { (p.1, p.0) };
        if let Some((_, g)) = self.cache.borrow().iter().find(|(k, _)| *k == key) {
            return g.clone();
        }
        let g = Arc::new(aggregates(self.field(key.0), self.field(key.1)));
        self.cache.borrow_mut().push((key, g.clone()));
        g
    }
}

/// Radial multiplier `m_c` for every output sphere `c`.
fn multiplier(ms: &ModeSet, term: &Term, slots: &SlotFields<'_>) -> Vec<Complex64> {
    let norms = ms.shell_norms();
    let r = norms.len();
    let mut m = vec![Complex64::new(0.0, 0.0); r];
    match term.kernel {
        Kernel::Quad(k) => {
            let g = slots.aggregate(term.pairs[0]);
            for (a, &na) in norms.iter().enumerate() {
                if g[a] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (c, &nc) in norms.iter().enumerate() {
                    m[c] += g[a] * k.eval(na, nc);
                }
            }
        }
        Kernel::Quartic(k) => {
            let g0 = slots.aggregate(term.pairs[0]);
            let g1 = slots.aggregate(term.pairs[1]);
            let table = ms.quartic_table(k);
            for a in 0..r {
                if g0[a] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for b in 0..r {
                    let g = g0[a] * g1[b];
                    if g == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let row = &table[(a * r + b) * r..(a * r + b + 1) * r];
                    for (mc, t) in m.iter_mut().zip(row) {
                        *mc += g * t;
                    }
                }
            }
        }
    }
    m
}

/// Evaluates a sum of terms.
pub fn apply_terms(terms: &[Term], slots: &SlotFields<'_>) -> FieldPair {
    let modes = slots.field(Slot::U).modes().clone();
    let mut out = FieldPair::zeros(&modes);
    for t in terms {
        let m = multiplier(&modes, t, slots);
        let target = slots.field(t.target).coeffs();
        let dst = if t.row == 0 { out.first.coeffs_mut() } else { out.second.coeffs_mut() };
        for i in 0..dst.len() {
            dst[i] += t.coeff * m[modes.shell_of(i)] * target[i];
        }
    }
    out
}

/// `F(y)` for terms over base slots.
pub fn eval_at(terms: &[Term], y: &FieldPair) -> FieldPair {
    apply_terms(terms, &SlotFields::base(y))
}

/// Evaluates terms that reference the tangent slots.
pub fn eval_with_tangent(terms: &[Term], y: &FieldPair, h: &FieldPair) -> FieldPair {
    apply_terms(terms, &SlotFields::with_tangent(y, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_is_involution() {
        let t = Term::quartic(
            Complex64::new(0.0, 1.0),
            QuarticKernel::Y(YKernel::Y3_12),
            (Slot::U, Slot::U),
            (Slot::U, Slot::V),
            Slot::V,
            0,
        );
        assert_eq!(t.mirrored().mirrored(), t);
        assert_eq!(t.mirrored().row, 1);
        assert_eq!(t.mirrored().coeff, Complex64::new(0.0, -1.0));
    }
}
