//! Small divisors `|k| +- |j| +- |l|` on the integer lattice.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{nf5_coefficient, QuinticKind};
use crate::error::{Error, Result};
use crate::lattice::{radius_of, shell_norms, sphere_representative, ModeIndex};

/// Working value of the universal constant in the divisor and coefficient
/// bounds.
pub const DEFAULT_BOUND_CONSTANT: f64 = 27.0;

/// `(|k|^2 + |j|^2 - |l|^2)^2 - 4|k|^2|j|^2`, the product of the four divisors.
pub fn exact_p(k2: i64, j2: i64, l2: i64) -> BigInt {
    let small = (|| {
        let a = (k2 as i128).checked_add(j2 as i128)?.checked_sub(l2 as i128)?;
        let sq = a.checked_mul(a)?;
        let b = (k2 as i128).checked_mul(j2 as i128)?.checked_mul(4)?;
        sq.checked_sub(b)
    })();
    match small {
        Some(v) => BigInt::from(v),
        None => {
            let (k2, j2, l2) = (BigInt::from(k2), BigInt::from(j2), BigInt::from(l2));
            let a = &k2 + &j2 - &l2;
            &a * &a - BigInt::from(4) * k2 * j2
        }
    }
}

#[derive(Clone, Debug)]
pub struct DivisorReport {
    pub j: ModeIndex,
    pub l: ModeIndex,
    pub k: ModeIndex,
    /// `[|k|+|j|+|l|, |k|+|j|-|l|, |k|-|j|+|l|, |k|-|j|-|l|]`.
    pub divisors: [f64; 4],
    /// Exact vanishing of each divisor.
    pub vanishing: [bool; 4],
    pub p: BigInt,
    /// `|1/(|k|-|j|+|l|)| / (C |j|^2 |l|)`, absent when that divisor vanishes.
    pub ratio_sum: Option<f64>,
    /// `|1/(|k|-|j|-|l|)| / (C |j||l|(|j|+|l|))`, absent when that divisor vanishes.
    pub ratio_diff: Option<f64>,
}

impl DivisorReport {
    pub fn bound_ok(&self) -> [bool; 2] {
        [self.ratio_sum.map_or(true, |r| r <= 1.0), self.ratio_diff.map_or(true, |r| r <= 1.0)]
    }

    pub fn resonant(&self) -> bool {
        self.vanishing.iter().any(|&v| v)
    }
}

/// Divisors of a triple of squared radii. At most one factor can be below 1
/// in magnitude (any two differ by twice a radius); when `p != 0` that one is
/// recomputed as `p` over the other three to avoid cancellation.
pub fn divisors_from_norms(k2: i64, j2: i64, l2: i64) -> ([f64; 4], [bool; 4], BigInt) {
    let (k, j, l) = (radius_of(k2), radius_of(j2), radius_of(l2));
    let mut d = [k + j + l, k + j - l, k - j + l, k - j - l];
    let vanishing = [
        false,
        crate::lattice::sum_resonant(k2, j2, l2),
        crate::lattice::sum_resonant(k2, l2, j2),
        crate::lattice::sum_resonant(j2, l2, k2),
    ];
    let p = exact_p(k2, j2, l2);
    for (i, v) in vanishing.iter().enumerate() {
        if *v {
            d[i] = 0.0;
        }
    }
    if !p.is_zero() {
        let (imin, _) = d
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, x)| if x.abs() < acc.1 { (i, x.abs()) } else { acc });
        if d[imin].abs() < 1.0 {
            let others: f64 = d.iter().enumerate().filter(|(i, _)| *i != imin).map(|(_, x)| x).product();
            d[imin] = p.to_f64().unwrap_or(f64::NAN) / others;
        }
    }
    (d, vanishing, p)
}

pub fn divisor_report(j: &ModeIndex, l: &ModeIndex, k: &ModeIndex) -> DivisorReport {
    divisor_report_with(j, l, k, DEFAULT_BOUND_CONSTANT)
}

pub fn divisor_report_with(j: &ModeIndex, l: &ModeIndex, k: &ModeIndex, c: f64) -> DivisorReport {
    let (j2, l2, k2) = (j.norm_sq(), l.norm_sq(), k.norm_sq());
    let (divisors, vanishing, p) = divisors_from_norms(k2, j2, l2);
    let (jr, lr) = (radius_of(j2), radius_of(l2));
    let ratio_sum = (!vanishing[2]).then(|| 1.0 / divisors[2].abs() / (c * jr * jr * lr));
    let ratio_diff = (!vanishing[3]).then(|| 1.0 / divisors[3].abs() / (c * jr * lr * (jr + lr)));
    DivisorReport { j: *j, l: *l, k: *k, divisors, vanishing, p, ratio_sum, ratio_diff }
}

/// Reports for every ordered triple of spheres with radius at most
/// `max_radius`, one representative point per sphere.
pub fn divisor_scan(dim: usize, max_radius: f64) -> Result<Vec<DivisorReport>> {
    if !(2..=3).contains(&dim) && dim != 1 {
        return Err(Error::InvalidArgument(format!("dimension {dim} not in 1..=3")));
    }
    let max = (max_radius * max_radius + 1e-9).floor() as i64;
    let reps: Vec<ModeIndex> =
        shell_norms(dim, max).into_iter().map(|n| sphere_representative(dim, n).expect("sphere point")).collect();
    let mut out = Vec::with_capacity(reps.len().pow(3));
    for j in &reps {
        for l in &reps {
            for k in &reps {
                out.push(divisor_report(j, l, k));
            }
        }
    }
    Ok(out)
}

/// `(n, n+1, 4n+2)` with a two-square representation of each entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessTriple {
    pub n: u128,
    pub witnesses: [(u128, u128); 3],
    pub p: BigInt,
}

fn isqrt_u128(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

/// Largest-first two-square representation by direct search.
fn two_squares(n: u128) -> Option<(u128, u128)> {
    let top = isqrt_u128(n);
    let mut a = top;
    loop {
        let rest = n - a * a;
        let b = isqrt_u128(rest);
        if b * b == rest {
            return Some((a, b));
        }
        if a == 0 || a * a < n / 2 {
            return None;
        }
        a -= 1;
    }
}

/// `(a^2 + b^2)(c^2 + d^2) = (ac + bd)^2 + (ad - bc)^2`.
fn brahmagupta(x: (u128, u128), y: (u128, u128)) -> (u128, u128) {
    let (a, b) = (x.0 as i128, x.1 as i128);
    let (c, d) = (y.0 as i128, y.1 as i128);
    ((a * c + b * d).unsigned_abs(), (a * d - b * c).unsigned_abs())
}

pub fn sharpness_triples(count: usize) -> Result<Vec<SharpnessTriple>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be positive".into()));
    }
    let mut out: Vec<SharpnessTriple> = Vec::with_capacity(count);
    let mut n: u128 = 4;
    for _ in 0..count {
        let values = [n, n + 1, 4 * n + 2];
        let mut witnesses = [(0, 0); 3];
        for (i, &v) in values.iter().enumerate() {
            let found = if isqrt_u128(v) <= BRUTE_FORCE_LIMIT {
                two_squares(v)
            } else {
                let prev = out.last().expect("first triple is small");
                let m = prev.n;
                Some(match i {
                    0 => brahmagupta((1, 1), brahmagupta(prev.witnesses[0], prev.witnesses[1])),
                    1 => (m + 1, m),
                    _ => (2 * m + 1, 2 * m + 1),
                })
            };
            let w = found.ok_or_else(|| Error::Convergence(format!("no two-square representation of {v}")))?;
            if w.0 * w.0 + w.1 * w.1 != v {
                return Err(Error::Convergence(format!("bad two-square representation of {v}")));
            }
            witnesses[i] = w;
        }
        let big = |x: u128| BigInt::from(x);
        let (k2, j2, l2) = (big(values[0]), big(values[1]), big(values[2]));
        let a = &k2 + &j2 - &l2;
        let p = &a * &a - BigInt::from(4) * &k2 * &j2;
        out.push(SharpnessTriple { n, witnesses, p });
        if out.len() == count {
            break;
        }
        n = n
            .checked_mul(n)
            .and_then(|x| x.checked_mul(2))
            .and_then(|x| x.checked_add(2 * n))
            .ok_or_else(|| Error::InvalidArgument("sharpness sequence overflows 128 bits".into()))?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundCheck {
    pub ok: bool,
    /// `|coefficient|` over the radius monomial, to be compared with the constant.
    pub ratio: f64,
}

pub fn coefficient_bound_check(kind: QuinticKind, j: &ModeIndex, l: &ModeIndex, k: &ModeIndex) -> Result<BoundCheck> {
    let v = nf5_coefficient(kind, j, l, k)?;
    let (jr2, lr2) = (j.norm_sq() as f64, l.norm_sq() as f64);
    let base = if j.dim() == 1 { jr2 * lr2 } else { jr2 * jr2 * lr2 + jr2 * lr2 * lr2 };
    let ratio = v.abs() / base;
    Ok(BoundCheck { ok: ratio <= DEFAULT_BOUND_CONSTANT && ratio.is_finite(), ratio })
}

/// `|p| >= 1` whenever no divisor vanishes.
pub fn p_nonzero_when_nonresonant(r: &DivisorReport) -> bool {
    r.resonant() || r.p.abs() >= BigInt::from(1)
}
