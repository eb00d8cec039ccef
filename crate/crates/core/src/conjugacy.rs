//! Integrates the `(f, g)` system and the normalised system side by side
//! from matched data and measures how far the pushed-forward normalised
//! trajectory drifts from the direct one.

use crate::error::Result;
use crate::field::FieldPair;
use crate::functional::RegularityParams;
use crate::integrate::{integrate, PairFlow, System};
use crate::transforms::phi_next;

#[derive(Clone, Debug)]
pub struct ConjugacySample {
    pub t: f64,
    /// `l2` distance between the `(f, g)` state and the image of the
    /// normalised state.
    pub discrepancy: f64,
}

#[derive(Clone, Debug)]
pub struct ConjugacyReport {
    pub dt: f64,
    pub samples: Vec<ConjugacySample>,
}

impl ConjugacyReport {
    pub fn max_discrepancy(&self) -> f64 {
        self.samples.iter().map(|s| s.discrepancy).fold(0.0, f64::max)
    }
}

/// Runs both flows from `y0` (normalised variables) and `phi_next(y0)`.
pub fn conjugacy_run(
    y0: &FieldPair,
    dt: f64,
    steps: usize,
    sample_every: usize,
    reg: &RegularityParams,
) -> Result<ConjugacyReport> {
    let modes = y0.modes().clone();
    let fg_flow = PairFlow::new(System::Fg, &modes, *reg)?;
    let nf_flow = PairFlow::new(System::Normalized, &modes, *reg)?;
    let every = sample_every.max(1);
    let mut fg = phi_next(y0, reg)?;
    let mut y = y0.clone();
    let mut samples = Vec::new();
    let mut record = |t: f64, fg: &FieldPair, y: &FieldPair| -> Result<()> {
        let pushed = phi_next(y, reg)?;
        samples.push(ConjugacySample { t, discrepancy: (&pushed - fg).sobolev_norm(0.0) });
        Ok(())
    };
    record(0.0, &fg, &y)?;
    let mut done = 0;
    while done < steps {
        let chunk = every.min(steps - done);
        fg = integrate(&fg_flow, fg, dt, chunk, |_, _, _| Ok(()))?;
        y = integrate(&nf_flow, y, dt, chunk, |_, _, _| Ok(()))?;
        done += chunk;
        record(done as f64 * dt, &fg, &y)?;
    }
    Ok(ConjugacyReport { dt, samples })
}
