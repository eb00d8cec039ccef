//! Seeded random states.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldPair, RealPairState, SpectralField};
use crate::modes::ModeSet;

/// Deterministic source of random fields.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn gaussian(&mut self) -> f64 {
        // Box-Muller; the open interval keeps the logarithm finite.
        let a: f64 = self.rng.gen_range(f64::EPSILON..1.0);
        let b: f64 = self.rng.gen();
        (-2.0 * a.ln()).sqrt() * (std::f64::consts::TAU * b).cos()
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// Independent complex Gaussian coefficients, rescaled so that
    /// `||u||_s = norm`.
    pub fn complex_field(&mut self, modes: &Arc<ModeSet>, s: f64, norm: f64) -> SpectralField {
        let f = SpectralField::from_fn(modes, |_, _| Complex64::new(self.gaussian(), self.gaussian()));
        rescale(f, s, norm)
    }

    /// Conjugate pair `(w, conj w(-.))` with `||w||_s = norm`.
    pub fn conjugate_pair(&mut self, modes: &Arc<ModeSet>, s: f64, norm: f64) -> FieldPair {
        FieldPair::conjugate(self.complex_field(modes, s, norm))
    }

    /// Real-valued field: `u_{-k} = conj u_k`.
    pub fn real_field(&mut self, modes: &Arc<ModeSet>, s: f64, norm: f64) -> SpectralField {
        let f = self.complex_field(modes, s, 1.0);
        let r = &f + &f.conj_reflect();
        rescale(r, s, norm)
    }

    /// Real position and velocity, each of the given `s`-norm.
    pub fn real_state(&mut self, modes: &Arc<ModeSet>, s: f64, norm: f64) -> RealPairState {
        let u = self.real_field(modes, s, norm);
        let v = self.real_field(modes, s, norm);
        RealPairState::new(u, v).expect("real by construction")
    }
}

fn rescale(f: SpectralField, s: f64, norm: f64) -> SpectralField {
    let n = f.sobolev_norm(s);
    if n == 0.0 {
        f
    } else {
        f.scale_re(norm / n)
    }
}
