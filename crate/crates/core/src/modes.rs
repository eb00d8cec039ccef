//! Finite, negation-closed Fourier supports grouped into spheres.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::kernel::QuarticKernel;
use crate::lattice::{ball_points, radius_of, ModeIndex};

/// Lattice points of one sphere present in a support.
#[derive(Debug, Clone)]
pub struct Shell {
    pub norm_sq: i64,
    pub radius: f64,
    /// Positions in the owning `ModeSet`.
    pub members: Vec<usize>,
}

/// A sorted support closed under `k -> -k`.
pub struct ModeSet {
    dim: usize,
    modes: Vec<ModeIndex>,
    neg: Vec<usize>,
    shell_of: Vec<usize>,
    shells: Vec<Shell>,
    kernels: Mutex<HashMap<QuarticKernel, Arc<Vec<f64>>>>,
}

impl std::fmt::Debug for ModeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModeSet")
            .field("dim", &self.dim)
            .field("modes", &self.modes)
            .finish()
    }
}

impl PartialEq for ModeSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.modes == other.modes
    }
}

impl ModeSet {
    /// Builds a support from arbitrary points; duplicates are merged and the
    /// set must already contain `-k` for every `k`.
    pub fn from_modes(dim: usize, modes: impl IntoIterator<Item = ModeIndex>) -> Result<Arc<Self>> {
        if dim == 0 || dim > crate::lattice::MAX_DIM {
            return Err(Error::InvalidArgument(format!("dimension {dim} not in 1..=3")));
        }
        let mut v: Vec<ModeIndex> = modes.into_iter().collect();
        for m in &v {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.dim() });
            }
        }
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(Error::InvalidArgument("empty support".into()));
        }
        let mut neg = Vec::with_capacity(v.len());
        for m in &v {
            match v.binary_search(&m.neg()) {
                Ok(i) => neg.push(i),
                Err(_) => {
                    return Err(Error::SupportMismatch(format!("support contains {m:?} but not its negative")))
                }
            }
        }
        let mut norms: Vec<i64> = v.iter().map(|m| m.norm_sq()).collect();
        norms.sort();
        norms.dedup();
        let mut shells: Vec<Shell> = norms
            .iter()
            .map(|&n| Shell { norm_sq: n, radius: radius_of(n), members: Vec::new() })
            .collect();
        let mut shell_of = Vec::with_capacity(v.len());
        for (i, m) in v.iter().enumerate() {
            let s = norms.binary_search(&m.norm_sq()).expect("norm present");
            shells[s].members.push(i);
            shell_of.push(s);
        }
        Ok(Arc::new(Self { dim, modes: v, neg, shell_of, shells, kernels: Mutex::new(HashMap::new()) }))
    }

    /// All nonzero lattice points with `|k| <= radius`.
    pub fn ball(dim: usize, radius: f64) -> Result<Arc<Self>> {
        if !(radius >= 1.0) {
            return Err(Error::InvalidArgument(format!("radius {radius} admits no lattice point")));
        }
        let max = (radius * radius + 1e-9).floor() as i64;
        Self::from_modes(dim, ball_points(dim, max))
    }

    /// Union of complete spheres with the given squared radii.
    pub fn spheres(dim: usize, norms_sq: &[i64]) -> Result<Arc<Self>> {
        let max = norms_sq.iter().copied().max().unwrap_or(0);
        let pts: Vec<ModeIndex> =
            ball_points(dim, max).into_iter().filter(|m| norms_sq.contains(&m.norm_sq())).collect();
        if pts.len() == 0 {
            return Err(Error::InvalidArgument("no lattice point on the requested spheres".into()));
        }
        Self::from_modes(dim, pts)
    }

    /// One-dimensional support `{+-n : n in ns}`.
    pub fn line(ns: &[i64]) -> Result<Arc<Self>> {
        let mut pts = Vec::new();
        for &n in ns {
            pts.push(ModeIndex::new(&[n])?);
            pts.push(ModeIndex::new(&[-n])?);
        }
        Self::from_modes(1, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[ModeIndex] {
        &self.modes
    }

    pub fn mode(&self, i: usize) -> ModeIndex {
        self.modes[i]
    }

    pub fn index_of(&self, m: &ModeIndex) -> Option<usize> {
        self.modes.binary_search(m).ok()
    }

    /// Position of `-modes[i]`.
    pub fn neg_index(&self, i: usize) -> usize {
        self.neg[i]
    }

    pub fn shell_of(&self, i: usize) -> usize {
        self.shell_of[i]
    }

    pub fn shells(&self) -> &[Shell] {
        &self.shells
    }

    pub fn shell_norms(&self) -> Vec<i64> {
        self.shells.iter().map(|s| s.norm_sq).collect()
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.shells[self.shell_of[i]].radius
    }

    pub fn max_radius(&self) -> f64 {
        self.shells.last().map(|s| s.radius).unwrap_or(0.0)
    }

    /// Kernel table `T[(a*R + b)*R + c]` over shell triples, built once.
    pub(crate) fn quartic_table(&self, kernel: QuarticKernel) -> Arc<Vec<f64>> {
        let mut cache = self.kernels.lock().expect("kernel cache poisoned");
        cache
            .entry(kernel)
            .or_insert_with(|| {
                let norms = self.shell_norms();
                let r = norms.len();
                let mut t = Vec::with_capacity(r * r * r);
                for &a in &norms {
                    for &b in &norms {
                        for &c in &norms {
                            t.push(kernel.eval(a, b, c));
                        }
                    }
                }
                Arc::new(t)
            })
            .clone()
    }
}
