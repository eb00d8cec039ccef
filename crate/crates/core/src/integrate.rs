//! Classical fourth-order Runge-Kutta for every system of the chain.
//!
//! After each step the state is checked against the structure its system
//! must preserve: the support never changes, and conjugate or real states
//! are re-symmetrised once their defect exceeds [`RESYMMETRIZE_TOL`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use log::debug;

use crate::error::{Error, Result};
use crate::field::{FieldPair, RealPairState};
use crate::fields::{d1, rhs_eta_psi, rhs_fg, rhs_physical, w_full};
use crate::functional::RegularityParams;
use crate::modes::ModeSet;
use crate::shell::{shell_rhs, ShellSpectrum};

pub const RESYMMETRIZE_TOL: f64 = 1e-13;

/// Which right-hand side drives a field flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    Physical,
    Fg,
    EtaPsi,
    Normalized,
    Shell,
    /// `D1` alone: every mode rotates as `exp(-i|k|t)`.
    Linear,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::Physical => "physical",
            System::Fg => "fg",
            System::EtaPsi => "etapsi",
            System::Normalized => "normalized",
            System::Shell => "shell",
            System::Linear => "linear",
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "physical" => System::Physical,
            "fg" => System::Fg,
            "etapsi" => System::EtaPsi,
            "normalized" => System::Normalized,
            "shell" => System::Shell,
            "linear" => System::Linear,
            other => return Err(Error::InvalidArgument(format!("unknown system {other:?}"))),
        })
    }
}

/// An autonomous ODE on a linear state space.
pub trait Flow {
    type State: Clone;

    fn rhs(&self, x: &Self::State) -> Result<Self::State>;

    /// `x + a d`.
    fn axpy(x: &Self::State, a: f64, d: &Self::State) -> Self::State;

    /// Restores invariants after a step; errors end the integration.
    fn after_step(&self, _x: &mut Self::State, _step: usize) -> Result<()> {
        Ok(())
    }
}

pub fn rk4_step<F: Flow>(flow: &F, x: &F::State, dt: f64) -> Result<F::State> {
    let k1 = flow.rhs(x)?;
    let k2 = flow.rhs(&F::axpy(x, dt / 2.0, &k1))?;
    let k3 = flow.rhs(&F::axpy(x, dt / 2.0, &k2))?;
    let k4 = flow.rhs(&F::axpy(x, dt, &k3))?;
    let mut out = F::axpy(x, dt / 6.0, &k1);
    out = F::axpy(&out, dt / 3.0, &k2);
    out = F::axpy(&out, dt / 3.0, &k3);
    Ok(F::axpy(&out, dt / 6.0, &k4))
}

/// Runs `steps` steps, calling `observe(step, t, state)` before the first
/// step and after every step.
pub fn integrate<F: Flow>(
    flow: &F,
    x0: F::State,
    dt: f64,
    steps: usize,
    mut observe: impl FnMut(usize, f64, &F::State) -> Result<()>,
) -> Result<F::State> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("time step {dt} must be positive")));
    }
    let mut x = x0;
    observe(0, 0.0, &x).map_err(|e| at_step(0, e))?;
    for n in 1..=steps {
        let mut next = rk4_step(flow, &x, dt).map_err(|e| at_step(n, e))?;
        flow.after_step(&mut next, n).map_err(|e| at_step(n, e))?;
        x = next;
        observe(n, n as f64 * dt, &x).map_err(|e| at_step(n, e))?;
    }
    Ok(x)
}

fn at_step(step: usize, e: Error) -> Error {
    match e {
        Error::AtStep { .. } => e,
        other => Error::AtStep { step, source: Box::new(other) },
    }
}

fn check_support(modes: &Arc<ModeSet>, found: &Arc<ModeSet>) -> Result<()> {
    if Arc::ptr_eq(modes, found) || modes == found {
        Ok(())
    } else {
        Err(Error::SupportMismatch("flow left its initial support".into()))
    }
}

fn restore_conjugacy(x: &mut FieldPair, step: usize) {
    let defect = x.conjugate_defect();
    if defect > RESYMMETRIZE_TOL * x.max_abs().max(1.0) {
        debug!("step {step}: conjugate defect {defect:e}, re-symmetrising");
        x.resymmetrize();
    }
}

/// A flow on conjugate pairs.
pub struct PairFlow {
    system: System,
    modes: Arc<ModeSet>,
    reg: RegularityParams,
}

impl PairFlow {
    pub fn new(system: System, modes: &Arc<ModeSet>, reg: RegularityParams) -> Result<Self> {
        match system {
            System::Fg | System::EtaPsi | System::Normalized | System::Linear => {
                Ok(Self { system, modes: modes.clone(), reg })
            }
            other => Err(Error::InvalidArgument(format!("{other} is not a flow on conjugate pairs"))),
        }
    }
}

impl Flow for PairFlow {
    type State = FieldPair;

    fn rhs(&self, x: &FieldPair) -> Result<FieldPair> {
        check_support(&self.modes, x.modes())?;
        Ok(match self.system {
            System::Fg => rhs_fg(x),
            System::EtaPsi => rhs_eta_psi(x),
            System::Normalized => w_full(x, &self.reg)?.total(),
            System::Linear => d1(x),
            _ => unreachable!("rejected in the constructor"),
        })
    }

    fn axpy(x: &FieldPair, a: f64, d: &FieldPair) -> FieldPair {
        x.axpy(a.into(), d)
    }

    fn after_step(&self, x: &mut FieldPair, step: usize) -> Result<()> {
        check_support(&self.modes, x.modes())?;
        restore_conjugacy(x, step);
        Ok(())
    }
}

/// The wave equation in position and velocity.
pub struct PhysicalFlow {
    modes: Arc<ModeSet>,
}

impl PhysicalFlow {
    pub fn new(modes: &Arc<ModeSet>) -> Self {
        Self { modes: modes.clone() }
    }
}

impl Flow for PhysicalFlow {
    type State = RealPairState;

    fn rhs(&self, x: &RealPairState) -> Result<RealPairState> {
        check_support(&self.modes, x.modes())?;
        Ok(rhs_physical(x))
    }

    fn axpy(x: &RealPairState, a: f64, d: &RealPairState) -> RealPairState {
        RealPairState::from_pair_unchecked(x.as_pair().axpy(a.into(), &d.as_pair()))
    }

    fn after_step(&self, x: &mut RealPairState, step: usize) -> Result<()> {
        check_support(&self.modes, x.modes())?;
        for f in [&mut x.position, &mut x.velocity] {
            let defect = f.reality_defect();
            if defect > RESYMMETRIZE_TOL * f.max_abs().max(1.0) {
                debug!("step {step}: reality defect {defect:e}, re-symmetrising");
                *f = (&*f + &f.conj_reflect()).scale_re(0.5);
            }
        }
        Ok(())
    }
}

/// The closed aggregate system.
pub struct ShellFlow;

impl Flow for ShellFlow {
    type State = ShellSpectrum;

    fn rhs(&self, x: &ShellSpectrum) -> Result<ShellSpectrum> {
        let d = shell_rhs(x);
        Ok(x.with_values(d.ds, d.db))
    }

    fn axpy(x: &ShellSpectrum, a: f64, d: &ShellSpectrum) -> ShellSpectrum {
        x.axpy(a, d)
    }
}
