//! Effective dynamics of the sphere aggregates
//! `S_l = sum_{|k|=l} u_k v_-k` and `B_l = sum_{|k|=l} u_k u_-k`.
//!
//! The quintic normal form couples modes only through these sums, so the
//! truncation `W - Wge7` closes on them once the phase factor is expressed
//! through `(S, B)` as well.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{ConjugatePairState, FieldPair, SpectralField};
use crate::fields::{d1, w5, x3_plus};
use crate::functional::phi;
use crate::kernel::aggregates;
use crate::lattice::{diff_resonant, radius_of, shell_norms, sphere_representative, sum_resonant};
use crate::modes::ModeSet;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Slack allowed in `S_l >= 0` and `|B_l| <= S_l`.
pub const SHELL_TOL: f64 = 1e-12;

/// Squared radii of all nonzero lattice points with `|k| <= max_radius`.
pub fn gamma_radii(dim: usize, max_radius: f64) -> Result<Vec<i64>> {
    if !(max_radius >= 1.0) {
        return Err(Error::InvalidArgument(format!("radius {max_radius} below 1")));
    }
    Ok(shell_norms(dim, (max_radius * max_radius + 1e-9).floor() as i64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShellSpectrum {
    norms_sq: Arc<Vec<i64>>,
    radii: Arc<Vec<f64>>,
    pub s: Vec<f64>,
    pub b: Vec<Complex64>,
}

impl ShellSpectrum {
    /// Checks `S >= 0` and `|B| <= S` up to [`SHELL_TOL`].
    pub fn new(norms_sq: Vec<i64>, s: Vec<f64>, b: Vec<Complex64>) -> Result<Self> {
        let spec = Self::unchecked(norms_sq, s, b)?;
        spec.validate()?;
        Ok(spec)
    }

    fn unchecked(norms_sq: Vec<i64>, s: Vec<f64>, b: Vec<Complex64>) -> Result<Self> {
        if s.len() != norms_sq.len() || b.len() != norms_sq.len() {
            return Err(Error::DimensionMismatch { expected: norms_sq.len(), found: s.len().min(b.len()) });
        }
        if norms_sq.windows(2).any(|w| w[0] >= w[1]) || norms_sq.first().is_some_and(|&n| n <= 0) {
            return Err(Error::InvalidArgument("radii must be positive and strictly increasing".into()));
        }
        let radii = norms_sq.iter().map(|&n| radius_of(n)).collect();
        Ok(Self { norms_sq: Arc::new(norms_sq), radii: Arc::new(radii), s, b })
    }

    pub fn zeros(norms_sq: Vec<i64>) -> Result<Self> {
        let n = norms_sq.len();
        Self::unchecked(norms_sq, vec![0.0; n], vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn validate(&self) -> Result<()> {
        for (i, (&s, b)) in self.s.iter().zip(&self.b).enumerate() {
            let scale = s.abs().max(1.0);
            if s < -SHELL_TOL * scale || b.norm() > s + SHELL_TOL * scale {
                return Err(Error::InvalidArgument(format!(
                    "shell {} violates 0 <= |B| <= S: S = {s}, |B| = {}",
                    self.norms_sq[i],
                    b.norm()
                )));
            }
        }
        Ok(())
    }

    pub fn norms_sq(&self) -> &[i64] {
        &self.norms_sq
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `sum_l l^{2s} S_l`, the square of the `s`-norm of `u`.
    pub fn weighted_sum(&self, s: f64) -> f64 {
        self.radii.iter().zip(&self.s).map(|(r, v)| r.powf(2.0 * s) * v).sum()
    }

    /// `(1/4) sum_l l (B_l + 2 S_l + conj B_l)`.
    pub fn q_value(&self) -> f64 {
        0.25 * self.radii.iter().zip(self.s.iter().zip(&self.b)).map(|(r, (s, b))| r * (2.0 * b.re + 2.0 * s)).sum::<f64>()
    }

    /// Phase factor `sqrt(1 + 2 phi(Q)) - 1` with `Q` read off the aggregates.
    pub fn phase_factor(&self) -> f64 {
        (1.0 + 2.0 * phi(self.q_value())).sqrt() - 1.0
    }

    /// Same radii, new values; used for derivatives, which need not
    /// satisfy the positivity constraints.
    pub(crate) fn with_values(&self, s: Vec<f64>, b: Vec<Complex64>) -> Self {
        Self { norms_sq: self.norms_sq.clone(), radii: self.radii.clone(), s, b }
    }

    pub(crate) fn axpy(&self, a: f64, d: &ShellSpectrum) -> Self {
        let mut out = self.clone();
        for i in 0..self.len() {
            out.s[i] += a * d.s[i];
            out.b[i] += a * d.b[i];
        }
        out
    }
}

/// `(dS/dt, dB/dt)` on each shell.
#[derive(Clone, Debug, PartialEq)]
pub struct ShellDerivative {
    pub ds: Vec<f64>,
    pub db: Vec<Complex64>,
    /// Size of the products entering `dS` before their conjugate
    /// cancellation.
    pub ds_scale: f64,
}

/// Right-hand side with the phase factor closed over the aggregates.
pub fn shell_rhs(spec: &ShellSpectrum) -> ShellDerivative {
    shell_rhs_with_phase(spec, spec.phase_factor())
}

/// Right-hand side with an externally supplied phase factor `P`.
pub fn shell_rhs_with_phase(spec: &ShellSpectrum, p: f64) -> ShellDerivative {
    let n = spec.len();
    let (ns, r) = (spec.norms_sq(), spec.radii());
    let (s, b) = (&spec.s, &spec.b);
    let mut ds = vec![0.0; n];
    let mut db = vec![Complex64::new(0.0, 0.0); n];
    let mut ds_scale = 0.0;
    for l in 0..n {
        let lam = r[l];
        let mut dsl = Complex64::new(0.0, 0.0);
        let mut dbl = -2.0 * I * (1.0 + p) * (lam + 0.25 * lam * lam * s[l]) * b[l];
        for a in 0..n {
            let al = r[a];
            let mut bracket = 1.0 / (al + lam);
            if a != l {
                bracket -= 1.0 / (al - lam);
            }
            dbl += I / 16.0 * b[a].norm_sqr() * b[l] * al.powi(4) * bracket;
            let mut bracket = 6.0 + al / (al + lam);
            if a != l {
                bracket += al / (al - lam);
            }
            dbl += I / 8.0 * s[a] * s[l] * b[l] * lam * lam * al * bracket;
            for c in 0..n {
                let w = al * r[c] * lam;
                if sum_resonant(ns[a], ns[c], ns[l]) {
                    let x = b[a] * b[c] * b[l].conj();
                    dsl += 3.0 * I / 32.0 * (x - x.conj()) * w;
                    ds_scale += 3.0 / 16.0 * x.norm() * w;
                    dbl += 3.0 * I / 16.0 * b[a] * b[c] * s[l] * w;
                }
                if diff_resonant(ns[a], ns[c], ns[l]) {
                    let x = b[a] * b[c].conj() * b[l].conj();
                    dsl += 3.0 * I / 16.0 * (x - x.conj()) * w;
                    ds_scale += 3.0 / 8.0 * x.norm() * w;
                    dbl += 3.0 * I / 8.0 * b[a] * b[c].conj() * s[l] * w;
                }
            }
        }
        ds[l] = dsl.re;
        db[l] = dbl;
    }
    ShellDerivative { ds, db, ds_scale }
}

/// `sum_l l^{2s} dS_l/dt`.
pub fn shell_z6(spec: &ShellSpectrum, s: f64) -> f64 {
    let d = shell_rhs_with_phase(spec, 0.0);
    spec.radii().iter().zip(&d.ds).map(|(r, v)| r.powf(2.0 * s) * v).sum()
}

/// Aggregates of a conjugate pair, one entry per sphere of its support.
pub fn project_to_shells(pair: &ConjugatePairState) -> ShellSpectrum {
    project_pair(pair.as_pair())
}

fn project_pair(pair: &FieldPair) -> ShellSpectrum {
    let norms = pair.modes().shell_norms();
    let s = aggregates(&pair.first, &pair.second).iter().map(|z| z.re).collect();
    let b = aggregates(&pair.first, &pair.first);
    ShellSpectrum::unchecked(norms, s, b).expect("support radii are increasing")
}

/// A conjugate pair supported on one antipodal pair of points per sphere
/// whose aggregates equal `spec`.
pub fn realize(spec: &ShellSpectrum, dim: usize) -> Result<ConjugatePairState> {
    spec.validate()?;
    let mut pts = Vec::new();
    for &n in spec.norms_sq() {
        let k = sphere_representative(dim, n)
            .ok_or_else(|| Error::InvalidArgument(format!("no lattice point of squared radius {n} in dimension {dim}")))?;
        pts.push(k.neg());
        pts.push(k);
    }
    let ms = ModeSet::from_modes(dim, pts)?;
    let mut u = SpectralField::zeros(&ms);
    for (i, &n) in spec.norms_sq().iter().enumerate() {
        let k = sphere_representative(dim, n).expect("checked above");
        let (s, b) = (spec.s[i].max(0.0), spec.b[i]);
        // |a|^2 + |c|^2 = S and 2 a c = B with a real
        let root = (s * s - b.norm_sqr()).max(0.0).sqrt();
        let a = ((s + root) / 2.0).sqrt();
        let c = if a == 0.0 { Complex64::new(0.0, 0.0) } else { b / (2.0 * a) };
        u.set(&k, Complex64::new(a, 0.0))?;
        u.set(&k.neg(), c)?;
    }
    Ok(ConjugatePairState::from_first(u))
}

/// Dual-path comparison of the aggregate derivatives.
#[derive(Clone, Debug)]
pub struct ShellConsistency {
    /// Projection of the field-level flow `(1+P)(D1 + X3+) + W5`.
    pub projected: ShellDerivative,
    /// The closed shell equations.
    pub closed: ShellDerivative,
    /// `max_l |dS_l (a) - dS_l (b)|` over the cancellation scale of `dS`.
    pub ds_error: f64,
    /// Same for `dB`, over `max_l |dB_l|`.
    pub db_error: f64,
    /// `sum_l l^{2s} dS_l` along each path.
    pub weighted: (f64, f64),
}

pub fn shell_consistency(pair: &ConjugatePairState, s: f64) -> ShellConsistency {
    let y = pair.as_pair();
    let spec = project_pair(y);
    let p = spec.phase_factor();
    let flow = &(&d1(y) + &x3_plus(y)).scale_re(1.0 + p) + &w5(y);
    let ds: Vec<f64> = aggregates(&flow.first, &y.second)
        .iter()
        .zip(aggregates(&y.first, &flow.second))
        .map(|(a, b)| (a + b).re)
        .collect();
    let db: Vec<Complex64> = aggregates(&flow.first, &y.first).iter().map(|z| 2.0 * z).collect();
    let closed = shell_rhs_with_phase(&spec, p);
    let ds_diff = ds.iter().zip(&closed.ds).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let db_diff = db.iter().zip(&closed.db).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let db_scale = closed.db.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let rel = |d: f64, scale: f64| if scale == 0.0 { d } else { d / scale };
    let weight = |v: &[f64]| spec.radii().iter().zip(v).map(|(r, x)| r.powf(2.0 * s) * x).sum::<f64>();
    let weighted = (weight(&ds), weight(&closed.ds));
    let ds_error = rel(ds_diff, closed.ds_scale);
    let projected = ShellDerivative { ds, db, ds_scale: closed.ds_scale };
    ShellConsistency { ds_error, db_error: rel(db_diff, db_scale), weighted, projected, closed }
}
