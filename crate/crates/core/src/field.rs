//! Complex coefficient fields on a fixed support, and pairs of them.

use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::ModeIndex;
use crate::modes::ModeSet;

/// Coefficients `x_k` for every `k` of a support.
#[derive(Clone, Debug)]
pub struct SpectralField {
    modes: Arc<ModeSet>,
    coeffs: Vec<Complex64>,
}

fn same(a: &Arc<ModeSet>, b: &Arc<ModeSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SpectralField {
    pub fn zeros(modes: &Arc<ModeSet>) -> Self {
        Self { modes: modes.clone(), coeffs: vec![Complex64::new(0.0, 0.0); modes.len()] }
    }

    pub fn from_coeffs(modes: &Arc<ModeSet>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != modes.len() {
            return Err(Error::SupportMismatch(format!(
                "{} coefficients for {} modes",
                coeffs.len(),
                modes.len()
            )));
        }
        Ok(Self { modes: modes.clone(), coeffs })
    }

    pub fn from_fn(modes: &Arc<ModeSet>, mut f: impl FnMut(usize, ModeIndex) -> Complex64) -> Self {
        let coeffs = modes.modes().iter().enumerate().map(|(i, m)| f(i, *m)).collect();
        Self { modes: modes.clone(), coeffs }
    }

    pub fn modes(&self) -> &Arc<ModeSet> {
        &self.modes
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn get(&self, m: &ModeIndex) -> Option<Complex64> {
        self.modes.index_of(m).map(|i| self.coeffs[i])
    }

    pub fn set(&mut self, m: &ModeIndex, value: Complex64) -> Result<()> {
        let i = self
            .modes
            .index_of(m)
            .ok_or_else(|| Error::SupportMismatch(format!("{m:?} not in support")))?;
        self.coeffs[i] = value;
        Ok(())
    }

    pub fn same_support(&self, other: &Self) -> bool {
        same(&self.modes, &other.modes)
    }

    pub fn check_support(&self, other: &Self) -> Result<()> {
        if self.modes.dim() != other.modes.dim() {
            return Err(Error::DimensionMismatch { expected: self.modes.dim(), found: other.modes.dim() });
        }
        if !self.same_support(other) {
            return Err(Error::SupportMismatch("fields live on different supports".into()));
        }
        Ok(())
    }

    fn assert_support(&self, other: &Self) {
        assert!(self.same_support(other), "fields live on different supports");
    }

    /// `x_k -> conj(x_{-k})`.
    pub fn conj_reflect(&self) -> Self {
        let coeffs = (0..self.coeffs.len()).map(|i| self.coeffs[self.modes.neg_index(i)].conj()).collect();
        Self { modes: self.modes.clone(), coeffs }
    }

    /// Multiplies `x_k` by `f(|k|)`.
    pub fn radial_multiplier(&self, f: impl Fn(f64) -> f64) -> Self {
        let per_shell: Vec<f64> = self.modes.shells().iter().map(|s| f(s.radius)).collect();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * per_shell[self.modes.shell_of(i)])
            .collect();
        Self { modes: self.modes.clone(), coeffs }
    }

    /// `|D|^sigma`.
    pub fn lambda_pow(&self, sigma: f64) -> Self {
        if sigma == 1.0 {
            self.radial_multiplier(|r| r)
        } else {
            self.radial_multiplier(|r| r.powf(sigma))
        }
    }

    pub fn lambda(&self) -> Self {
        self.lambda_pow(1.0)
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self { modes: self.modes.clone(), coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    pub fn scale_re(&self, a: f64) -> Self {
        Self { modes: self.modes.clone(), coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: Complex64, other: &Self) -> Self {
        self.assert_support(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + a * y).collect();
        Self { modes: self.modes.clone(), coeffs }
    }

    pub fn add_assign_scaled(&mut self, a: Complex64, other: &Self) {
        self.assert_support(other);
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += a * y;
        }
    }

    /// Pointwise product `x_k y_k`.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.assert_support(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x * y).collect();
        Self { modes: self.modes.clone(), coeffs }
    }

    /// `<w, h> = sum_j w_j h_{-j}`. Fields on different supports are paired
    /// over the common modes.
    pub fn pairing(&self, other: &Self) -> Result<Complex64> {
        if self.modes.dim() != other.modes.dim() {
            return Err(Error::DimensionMismatch { expected: self.modes.dim(), found: other.modes.dim() });
        }
        if self.same_support(other) {
            return Ok(self.pairing_same(other));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, m) in self.modes.modes().iter().enumerate() {
            if let Some(h) = other.get(&m.neg()) {
                acc += self.coeffs[i] * h;
            }
        }
        Ok(acc)
    }

    pub(crate) fn pairing_same(&self, other: &Self) -> Complex64 {
        self.assert_support(other);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.coeffs.len() {
            acc += self.coeffs[i] * other.coeffs[self.modes.neg_index(i)];
        }
        acc
    }

    /// `(sum_k |x_k|^2 |k|^{2s})^{1/2}`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        let w: Vec<f64> = self.modes.shells().iter().map(|sh| sh.radius.powf(2.0 * s)).collect();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm_sqr() * w[self.modes.shell_of(i)])
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `max_k |x_k - conj(x_{-k})|`; zero for real-valued functions.
    pub fn reality_defect(&self) -> f64 {
        (0..self.coeffs.len())
            .map(|i| (self.coeffs[i] - self.coeffs[self.modes.neg_index(i)].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Restriction to, or zero-extension onto, another support.
    pub fn transfer(&self, target: &Arc<ModeSet>) -> Result<Self> {
        if target.dim() != self.modes.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: self.modes.dim() });
        }
        Ok(Self::from_fn(target, |_, m| self.get(&m).unwrap_or_default()))
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: Self) -> SpectralField {
        self.axpy(Complex64::new(1.0, 0.0), rhs)
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: Self) -> SpectralField {
        self.axpy(Complex64::new(-1.0, 0.0), rhs)
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scale_re(-1.0)
    }
}

impl Mul<Complex64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: Complex64) -> SpectralField {
        self.scale(rhs)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: f64) -> SpectralField {
        self.scale_re(rhs)
    }
}

/// Two fields on one support; the generic state and tangent type.
#[derive(Clone, Debug)]
pub struct FieldPair {
    pub first: SpectralField,
    pub second: SpectralField,
}

impl FieldPair {
    pub fn new(first: SpectralField, second: SpectralField) -> Result<Self> {
        first.check_support(&second)?;
        Ok(Self { first, second })
    }

    pub(crate) fn new_unchecked(first: SpectralField, second: SpectralField) -> Self {
        debug_assert!(first.same_support(&second));
        Self { first, second }
    }

    /// `(w, conj-reflect(w))`.
    pub fn conjugate(first: SpectralField) -> Self {
        let second = first.conj_reflect();
        Self { first, second }
    }

    pub fn zeros(modes: &Arc<ModeSet>) -> Self {
        Self { first: SpectralField::zeros(modes), second: SpectralField::zeros(modes) }
    }

    pub fn modes(&self) -> &Arc<ModeSet> {
        self.first.modes()
    }

    pub fn swap(&self) -> Self {
        Self { first: self.second.clone(), second: self.first.clone() }
    }

    /// `max_k |second_k - conj(first_{-k})|`.
    pub fn conjugate_defect(&self) -> f64 {
        let m = self.first.modes();
        (0..m.len())
            .map(|i| (self.second.coeffs()[i] - self.first.coeffs()[m.neg_index(i)].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Replaces `second` by the average of itself and the reflection of `first`
    /// and vice versa.
    pub fn resymmetrize(&mut self) {
        let a = (&self.first + &self.second.conj_reflect()).scale_re(0.5);
        self.second = a.conj_reflect();
        self.first = a;
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self { first: self.first.scale(a), second: self.second.scale(a) }
    }

    pub fn scale_re(&self, a: f64) -> Self {
        Self { first: self.first.scale_re(a), second: self.second.scale_re(a) }
    }

    pub fn axpy(&self, a: Complex64, other: &Self) -> Self {
        Self { first: self.first.axpy(a, &other.first), second: self.second.axpy(a, &other.second) }
    }

    pub fn add_assign_scaled(&mut self, a: Complex64, other: &Self) {
        self.first.add_assign_scaled(a, &other.first);
        self.second.add_assign_scaled(a, &other.second);
    }

    pub fn lambda_pow(&self, sigma: f64) -> Self {
        Self { first: self.first.lambda_pow(sigma), second: self.second.lambda_pow(sigma) }
    }

    /// Larger of the two component norms.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        self.first.sobolev_norm(s).max(self.second.sobolev_norm(s))
    }

    pub fn max_abs(&self) -> f64 {
        self.first.max_abs().max(self.second.max_abs())
    }

    pub fn transfer(&self, target: &Arc<ModeSet>) -> Result<Self> {
        Ok(Self { first: self.first.transfer(target)?, second: self.second.transfer(target)? })
    }
}

impl Add for &FieldPair {
    type Output = FieldPair;
    fn add(self, rhs: Self) -> FieldPair {
        FieldPair { first: &self.first + &rhs.first, second: &self.second + &rhs.second }
    }
}

impl Sub for &FieldPair {
    type Output = FieldPair;
    fn sub(self, rhs: Self) -> FieldPair {
        FieldPair { first: &self.first - &rhs.first, second: &self.second - &rhs.second }
    }
}

impl Neg for &FieldPair {
    type Output = FieldPair;
    fn neg(self) -> FieldPair {
        self.scale_re(-1.0)
    }
}

impl Mul<f64> for &FieldPair {
    type Output = FieldPair;
    fn mul(self, rhs: f64) -> FieldPair {
        self.scale_re(rhs)
    }
}

impl Mul<Complex64> for &FieldPair {
    type Output = FieldPair;
    fn mul(self, rhs: Complex64) -> FieldPair {
        self.scale(rhs)
    }
}

/// A pair with `second = conj-reflect(first)` up to a tolerance.
#[derive(Clone, Debug)]
pub struct ConjugatePairState(FieldPair);

/// Defect accepted by [`ConjugatePairState::new`].
pub const CONJUGATE_TOL: f64 = 1e-12;

impl ConjugatePairState {
    pub fn from_first(first: SpectralField) -> Self {
        Self(FieldPair::conjugate(first))
    }

    pub fn new(pair: FieldPair) -> Result<Self> {
        let scale = pair.max_abs().max(1e-300);
        let defect = pair.conjugate_defect();
        if defect > CONJUGATE_TOL * scale.max(1.0) {
            return Err(Error::RealStructure(defect));
        }
        Ok(Self(pair))
    }

    pub fn into_inner(self) -> FieldPair {
        self.0
    }

    pub fn as_pair(&self) -> &FieldPair {
        &self.0
    }
}

impl Deref for ConjugatePairState {
    type Target = FieldPair;
    fn deref(&self) -> &FieldPair {
        &self.0
    }
}

/// Position and velocity of a real solution: both fields satisfy
/// `x_{-k} = conj(x_k)`.
#[derive(Clone, Debug)]
pub struct RealPairState {
    pub position: SpectralField,
    pub velocity: SpectralField,
}

impl RealPairState {
    pub fn new(position: SpectralField, velocity: SpectralField) -> Result<Self> {
        position.check_support(&velocity)?;
        let defect = position.reality_defect().max(velocity.reality_defect());
        let scale = position.max_abs().max(velocity.max_abs()).max(1.0);
        if defect > CONJUGATE_TOL * scale {
            return Err(Error::RealStructure(defect));
        }
        Ok(Self { position, velocity })
    }

    pub fn modes(&self) -> &Arc<ModeSet> {
        self.position.modes()
    }

    pub fn as_pair(&self) -> FieldPair {
        FieldPair::new_unchecked(self.position.clone(), self.velocity.clone())
    }

    pub fn from_pair_unchecked(p: FieldPair) -> Self {
        Self { position: p.first, velocity: p.second }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pairing_pairs_opposite_modes() {
        let ms = ModeSet::line(&[1, 2]).unwrap();
        // modes sorted: -2, -1, 1, 2
        let w = SpectralField::from_coeffs(&ms, vec![c(1., 0.), c(2., 0.), c(3., 0.), c(4., 0.)]).unwrap();
        let h = SpectralField::from_coeffs(&ms, vec![c(0., 1.), c(1., 0.), c(0., 0.), c(1., 1.)]).unwrap();
        // w_{-2}h_2 + w_{-1}h_1 + w_1 h_{-1} + w_2 h_{-2}
        let expect = c(1., 0.) * c(1., 1.) + c(0., 0.) + c(3., 0.) * c(1., 0.) + c(4., 0.) * c(0., 1.);
        assert_eq!(w.pairing(&h).unwrap(), expect);
    }

    #[test]
    fn conj_reflect_is_involution() {
        let ms = ModeSet::ball(2, 2.0).unwrap();
        let w = SpectralField::from_fn(&ms, |i, _| c(i as f64, 1.0 - i as f64));
        let back = w.conj_reflect().conj_reflect();
        assert_eq!(back.coeffs(), w.coeffs());
        assert_eq!(FieldPair::conjugate(w).conjugate_defect(), 0.0);
    }

    #[test]
    fn sobolev_norm_weights() {
        let ms = ModeSet::line(&[2]).unwrap();
        let w = SpectralField::from_coeffs(&ms, vec![c(1., 0.), c(0., 1.)]).unwrap();
        assert!((w.sobolev_norm(1.0) - (8.0f64).sqrt()).abs() < 1e-15);
    }
}
