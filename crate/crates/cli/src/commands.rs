use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use kirchhoff_nf::coefficients::divisors::{divisor_scan as scan, p_nonzero_when_nonresonant};
use kirchhoff_nf::coefficients::{CoefficientTable, QuinticKind};
use kirchhoff_nf::conjugacy::conjugacy_run;
use kirchhoff_nf::fields::{energy_rate_total, energy_rate_z6};
use kirchhoff_nf::functional::{h3, h_physical, RegularityParams};
use kirchhoff_nf::integrate::{integrate, PairFlow, PhysicalFlow, ShellFlow, System};
use kirchhoff_nf::oracle::{expand_pushforward, symmetric_modes, verify_homological_equation};
use kirchhoff_nf::shell::project_to_shells;
use kirchhoff_nf::transforms::{
    compose_full, compose_full_inverse, phi1, phi2, phi3_inverse, phi4_inverse, phi5_inverse, phi_next_inverse, to_eta_psi,
};
use kirchhoff_nf::verify::{VerifyOptions, SUITES};
use kirchhoff_nf::{ConjugatePairState, FieldPair, RealPairState, SpectralField};
use log::warn;
use num_rational::BigRational;

use crate::{CliError, SimulationConfig};

/// Constant in the conjugacy verdict `max discrepancy <= C (dt^4 + 1e-10)`.
pub const CONJUGACY_CONSTANT: f64 = 1.0;

/// Seventeen significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn sink(path: Option<PathBuf>) -> Result<csv::Writer<Box<dyn Write>>, CliError> {
    let w: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    Ok(csv::Writer::from_writer(w))
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Rows are written at step 0, every `sample_every` steps, and at the end.
fn recorded(cfg: &SimulationConfig, step: usize) -> bool {
    step % cfg.sample_every == 0 || step == cfg.steps
}

/// Energy rates in normal-form variables; NaN where the inverse chain or
/// the normalised field is not defined.
struct Rates<'a> {
    s_list: &'a [f64],
    reg: RegularityParams,
    warned: bool,
}

impl Rates<'_> {
    fn columns(&mut self, y: kirchhoff_nf::Result<FieldPair>, t: f64) -> Vec<f64> {
        let n = self.s_list.len() + 1;
        let eval = |y: &FieldPair| -> kirchhoff_nf::Result<Vec<f64>> {
            let mut out = Vec::with_capacity(n);
            for &s in self.s_list {
                out.push(energy_rate_z6(y, s)?.pairing);
            }
            out.push(energy_rate_total(y, self.s_list[0], &self.reg)?.1);
            Ok(out)
        };
        match y.and_then(|y| eval(&y)) {
            Ok(v) => v,
            Err(e) => {
                if !self.warned {
                    warn!("t = {t}: energy rates unavailable ({e}); writing NaN");
                    self.warned = true;
                }
                vec![f64::NAN; n]
            }
        }
    }
}

pub fn simulate(cfg: &SimulationConfig, out: Option<PathBuf>) -> Result<bool, CliError> {
    if cfg.system == System::Shell {
        return shell(cfg, out);
    }
    if cfg.system == System::Linear {
        return Err(config_error("system linear is only available through the library"));
    }
    let modes = cfg.modes()?;
    let reg = cfg.regularity();
    let pair = cfg.initial_pair(&modes)?;
    let mut w = sink(out.or_else(|| cfg.out.clone()))?;
    let energy = if cfg.system == System::Physical { "H_physical" } else { "H3" };
    let mut header = vec!["t".to_string()];
    header.extend(cfg.s_list.iter().map(|s| format!("norm_{s}")));
    header.push(energy.into());
    header.extend(cfg.s_list.iter().map(|s| format!("z6_{s}")));
    header.push("z_ge8_estimate".into());
    w.write_record(&header)?;

    let mut rates = Rates { s_list: &cfg.s_list, reg, warned: false };
    let mut row = |t: f64, first: &SpectralField, h: f64, y: kirchhoff_nf::Result<FieldPair>| -> kirchhoff_nf::Result<()> {
        let mut r = vec![num(t)];
        r.extend(cfg.s_list.iter().map(|&s| num(first.sobolev_norm(s))));
        r.push(num(h));
        r.extend(rates.columns(y, t).into_iter().map(num));
        w.write_record(&r).map_err(|e| kirchhoff_nf::Error::Io(e.into()))
    };

    match cfg.system {
        System::Physical => {
            let uv = phi1(&phi2(&pair));
            let state = RealPairState::new(uv.first, uv.second)?;
            integrate(&PhysicalFlow::new(&modes), state, cfg.dt, cfg.steps, |n, t, x| {
                if !recorded(cfg, n) {
                    return Ok(());
                }
                row(t, &x.position, h_physical(&x.position, &x.velocity), compose_full_inverse(x, &reg))
            })?;
        }
        system => {
            let flow = PairFlow::new(system, &modes, reg)?;
            integrate(&flow, pair, cfg.dt, cfg.steps, |n, t, x| {
                if !recorded(cfg, n) {
                    return Ok(());
                }
                let (h, y) = match system {
                    System::Fg => (h3(&phi3_inverse(x)), phi_next_inverse(x, &reg)),
                    System::EtaPsi => {
                        (h3(x), phi4_inverse(x, reg.m0).and_then(|z| phi5_inverse(&z, reg.m1, reg.delta)))
                    }
                    _ => (to_eta_psi(x, &reg).map(|e| h3(&e)).unwrap_or(f64::NAN), Ok(x.clone())),
                };
                row(t, &x.first, h, y)
            })?;
        }
    }
    w.flush()?;
    Ok(true)
}

pub fn shell(cfg: &SimulationConfig, out: Option<PathBuf>) -> Result<bool, CliError> {
    let modes = cfg.modes()?;
    let spec = project_to_shells(&ConjugatePairState::from_first(cfg.initial_first(&modes)?));
    let mut w = sink(out.or_else(|| cfg.out.clone()))?;
    let mut header = vec!["time".to_string()];
    for n in spec.norms_sq() {
        header.extend([format!("S_{n}"), format!("ReB_{n}"), format!("ImB_{n}")]);
    }
    header.extend(cfg.s_list.iter().map(|s| format!("W_{s}")));
    w.write_record(&header)?;
    integrate(&ShellFlow, spec, cfg.dt, cfg.steps, |n, t, x| {
        if !recorded(cfg, n) {
            return Ok(());
        }
        let mut r = vec![num(t)];
        for (s, b) in x.s.iter().zip(&x.b) {
            r.extend([num(*s), num(b.re), num(b.im)]);
        }
        r.extend(cfg.s_list.iter().map(|&s| num(x.weighted_sum(s))));
        w.write_record(&r).map_err(|e| kirchhoff_nf::Error::Io(e.into()))
    })?;
    w.flush()?;
    Ok(true)
}

pub fn conjugacy(cfg: &SimulationConfig, out: Option<PathBuf>) -> Result<bool, CliError> {
    let modes = cfg.modes()?;
    let reg = cfg.regularity();
    let y0 = cfg.initial_pair(&modes)?;
    let u_norm = match compose_full(&y0, &reg) {
        Ok(state) => state.position.sobolev_norm(reg.m1),
        Err(e) => return Err(config_error(format!("initial data outside the transformation domain: {e}"))),
    };
    if u_norm > reg.delta / 2.0 {
        return Err(config_error(format!(
            "initial position has m1-norm {u_norm:e}, above delta/2 = {:e}",
            reg.delta / 2.0
        )));
    }
    let report = conjugacy_run(&y0, cfg.dt, cfg.steps, cfg.sample_every, &reg)?;
    let mut w = sink(out.or_else(|| cfg.out.clone()))?;
    w.write_record(["t", "discrepancy"])?;
    for s in &report.samples {
        w.write_record([num(s.t), num(s.discrepancy)])?;
    }
    w.flush()?;
    let bound = CONJUGACY_CONSTANT * (cfg.dt.powi(4) + 1e-10);
    let max = report.max_discrepancy();
    let passed = max <= bound;
    eprintln!(
        "{} conjugacy: max discrepancy {max:.6e}, bound C (dt^4 + 1e-10) = {bound:.6e} with C = {CONJUGACY_CONSTANT}",
        if passed { "PASS" } else { "FAIL" }
    );
    Ok(passed)
}

pub struct VerifyArgs {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub bound_samples: Option<usize>,
    pub corrupt: Option<String>,
    pub suites: Vec<String>,
}

fn corrupted_table(kind: Option<&str>) -> Result<CoefficientTable, CliError> {
    match kind {
        None => Ok(CoefficientTable::standard()),
        Some(k) => {
            let kind: QuinticKind = k.parse().map_err(|e| config_error(format!("{e}")))?;
            Ok(CoefficientTable::perturbed(kind, 1, 7))
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let mut opts = VerifyOptions::default();
    if let Some(s) = args.seed {
        opts.seed = s;
    }
    if let Some(n) = args.samples {
        opts.samples = n;
    }
    if let Some(n) = args.bound_samples {
        opts.bound_samples = n;
    }
    opts.table = corrupted_table(args.corrupt.as_deref())?;
    for name in &args.suites {
        if !SUITES.iter().any(|(n, _)| n == name) {
            return Err(config_error(format!("unknown suite {name:?}")));
        }
    }
    let mut all = true;
    let mut out = io::stdout().lock();
    for (name, suite) in SUITES {
        if !args.suites.is_empty() && !args.suites.iter().any(|s| s == name) {
            continue;
        }
        let report = suite(&opts)?;
        all &= report.passed();
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{verdict} {name} ({:.2?})", report.elapsed)?;
        for c in &report.checks {
            writeln!(out, "    {c}")?;
        }
    }
    writeln!(out, "seed {}: {}", opts.seed, if all { "all suites pass" } else { "verification failed" })?;
    Ok(all)
}

pub fn divisor_scan(dimension: usize, radius: f64, out: Option<PathBuf>) -> Result<bool, CliError> {
    let reports = scan(dimension, radius)?;
    let mut w = sink(out)?;
    w.write_record([
        "j", "l", "k", "d_ppp", "d_ppm", "d_pmp", "d_pmm", "p", "ratio_sum", "ratio_diff", "bounds_ok", "p_ok",
    ])?;
    let mut ok = true;
    let opt = |r: Option<f64>| r.map(num).unwrap_or_default();
    for r in &reports {
        let bounds = r.bound_ok().iter().all(|&b| b);
        let p_ok = p_nonzero_when_nonresonant(r);
        ok &= bounds && p_ok;
        let mut rec = vec![r.j.to_string(), r.l.to_string(), r.k.to_string()];
        rec.extend(r.divisors.iter().map(|&d| num(d)));
        rec.extend([r.p.to_string(), opt(r.ratio_sum), opt(r.ratio_diff), bounds.to_string(), p_ok.to_string()]);
        w.write_record(&rec)?;
    }
    w.flush()?;
    if !ok {
        eprintln!("FAIL divisor scan: some triple violates the bounds");
    }
    Ok(ok)
}

pub fn coeff_dump(max_norm_sq: i64, kind: Option<&str>, out: Option<PathBuf>) -> Result<bool, CliError> {
    if max_norm_sq < 1 {
        return Err(config_error("max squared radius must be at least 1"));
    }
    let kinds: Vec<QuinticKind> = match kind {
        Some(k) => vec![k.parse().map_err(|e| config_error(format!("{e}")))?],
        None => QuinticKind::ALL.to_vec(),
    };
    let table = CoefficientTable::standard();
    let mut w = sink(out)?;
    w.write_record(["kind", "j2", "l2", "k2", "value", "exact"])?;
    for kind in kinds {
        for j2 in 1..=max_norm_sq {
            for l2 in 1..=max_norm_sq {
                for k2 in 1..=max_norm_sq {
                    let Some(v) = table.value::<f64>(kind, j2, l2, k2) else { continue };
                    let exact = table.value::<BigRational>(kind, j2, l2, k2).map(|q| q.to_string()).unwrap_or_default();
                    w.write_record([kind.name().to_string(), j2.to_string(), l2.to_string(), k2.to_string(), num(v), exact])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(true)
}

pub fn oracle(modes: &[i64], corrupt: Option<&str>, dump: bool) -> Result<bool, CliError> {
    if modes.is_empty() || modes.iter().any(|&m| m <= 0) {
        return Err(config_error("modes must be positive integers"));
    }
    let sym = symmetric_modes(modes);
    let report = verify_homological_equation(&sym, &corrupted_table(corrupt)?)?;
    let mut out = io::stdout().lock();
    if dump {
        write!(out, "{}", expand_pushforward(&sym, 5)?.w.degree_part(5).dump())?;
    }
    let passed = report.passed();
    writeln!(
        out,
        "{} homological equation on {sym:?}: {} discrepancies",
        if passed { "PASS" } else { "FAIL" },
        report.discrepancy_count()
    )?;
    Ok(passed)
}
