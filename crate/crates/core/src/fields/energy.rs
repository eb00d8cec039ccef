use num_complex::Complex64;

use super::normal::{w5, w_full};
use super::Part;
use crate::error::{Error, Result};
use crate::field::FieldPair;
use crate::functional::RegularityParams;
use crate::kernel::aggregates;
use crate::lattice::sum_resonant;

/// Largest imaginary part tolerated before an energy rate is declared
/// non-real.
pub const Z6_IMAG_TOL: f64 = 1e-13;

/// `d/dt <|D|^s u, |D|^s v>` along `rhs`.
fn rate(pair: &FieldPair, rhs: &FieldPair, s: f64) -> Complex64 {
    let (u, v) = (pair.first.lambda_pow(s), pair.second.lambda_pow(s));
    rhs.first.lambda_pow(s).pairing_same(&v) + u.pairing_same(&rhs.second.lambda_pow(s))
}

fn real_part(z: Complex64, scale: f64) -> Result<f64> {
    if z.im.abs() > Z6_IMAG_TOL * scale.max(1.0) {
        return Err(Error::RealStructure(z.im));
    }
    Ok(z.re)
}

/// `Z6` both from its pairing definition and from the resonant sum over
/// sphere triples `|k| = |j| + |l|`.
#[derive(Clone, Copy, Debug)]
pub struct EnergyRate {
    pub pairing: f64,
    pub closed_form: f64,
    /// Sum of the sizes of the resonant products before the conjugate
    /// cancellation; the scale at which rounding in either evaluation is
    /// measured.
    pub magnitude: f64,
}

impl EnergyRate {
    /// Disagreement of the two evaluations relative to [`Self::magnitude`].
    pub fn discrepancy(&self) -> f64 {
        let d = (self.pairing - self.closed_form).abs();
        if self.magnitude == 0.0 {
            d
        } else {
            d / self.magnitude
        }
    }
}

pub fn energy_rate_z6(pair: &FieldPair, s: f64) -> Result<EnergyRate> {
    let by_pairing = rate(pair, &w5(pair), s);
    let ms = pair.modes();
    let norms = ms.shell_norms();
    let bu = aggregates(&pair.first, &pair.first);
    let bv = aggregates(&pair.second, &pair.second);
    let mut closed = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for (a, &na) in norms.iter().enumerate() {
        for (b, &nb) in norms.iter().enumerate() {
            for (c, &nc) in norms.iter().enumerate() {
                if !sum_resonant(na, nb, nc) {
                    continue;
                }
                let (ra, rb, rc) = ((na as f64).sqrt(), (nb as f64).sqrt(), (nc as f64).sqrt());
                let weight = ra * rb * rc * (rc.powf(2.0 * s) - ra.powf(2.0 * s) - rb.powf(2.0 * s));
                let (x, y) = (bu[a] * bu[b] * bv[c], bv[a] * bv[b] * bu[c]);
                magnitude += (x.norm() + y.norm()) * weight.abs();
                closed += (x - y) * weight;
            }
        }
    }
    closed *= Complex64::new(0.0, 3.0 / 32.0);
    let scale = by_pairing.norm().max(closed.norm());
    Ok(EnergyRate {
        pairing: real_part(by_pairing, scale)?,
        closed_form: real_part(closed, scale)?,
        magnitude: magnitude * 3.0 / 32.0,
    })
}

/// `(Z6, Zge8)`: the rates contributed by `W5` and by `Wge7`.
pub fn energy_rate_total(pair: &FieldPair, s: f64, reg: &RegularityParams) -> Result<(f64, f64)> {
    let z6 = energy_rate_z6(pair, s)?;
    let w = w_full(pair, reg)?;
    let z8 = rate(pair, w.get(Part::Wge7).expect("part present"), s);
    Ok((z6.pairing, real_part(z8, z8.norm())?))
}
