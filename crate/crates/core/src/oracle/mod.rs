//! Exact symbolic expansion of the normal-form construction in one space
//! dimension.
//!
//! Fields are polynomials in the coefficients `u_k, v_k` of a small mode set
//! with Gaussian-rational coefficients. The change of variables is pushed
//! through by literal substitution and a degree-truncated Neumann series, so
//! every cancellation the construction relies on can be confirmed as an
//! exact identity between polynomials.

mod expand;
mod ring;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

pub use ring::{CRational, Factor, Var};

use crate::coefficients::CoefficientTable;
use crate::error::{Error, Result};
use crate::field::{FieldPair, SpectralField};
use crate::lattice::{diff_resonant, sum_resonant, ModeIndex};
use crate::modes::ModeSet;
use expand::{Ctx, Pair};

/// Largest mode set the expansion accepts.
pub const MAX_ORACLE_MODES: usize = 8;

/// A monomial of one component: the product of `factors`, placed at
/// `output_mode`. Factors are kept sorted by variable, then mode.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub output_mode: i64,
    pub factors: Vec<Factor>,
}

impl Monomial {
    pub fn new(output_mode: i64, mut factors: Vec<Factor>) -> Self {
        factors.sort();
        Self { output_mode, factors }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }
}

/// Two components, each a map from canonical monomial to a nonzero
/// coefficient.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolynomialVectorField {
    pub components: [BTreeMap<Monomial, CRational>; 2],
}

impl PolynomialVectorField {
    fn from_pair(ctx: &Ctx, p: &Pair) -> Self {
        let mut out = Self::default();
        for c in 0..2 {
            for (i, poly) in p[c].iter().enumerate() {
                for (m, v) in &poly.0 {
                    out.components[c].insert(Monomial { output_mode: ctx.modes[i], factors: m.clone() }, v.clone());
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BTreeMap::is_empty)
    }

    pub fn len(&self) -> usize {
        self.components.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Adds `c` to one coefficient, removing it if the result vanishes.
    pub fn add_term(&mut self, component: usize, m: Monomial, c: CRational) {
        let map = &mut self.components[component];
        let v = match map.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            map.insert(m, v);
        }
    }

    pub fn degree_part(&self, d: usize) -> Self {
        let mut out = Self::default();
        for c in 0..2 {
            out.components[c] =
                self.components[c].iter().filter(|(m, _)| m.degree() == d).map(|(m, v)| (m.clone(), v.clone())).collect();
        }
        out
    }

    /// Evaluates at a numeric pair on a one-dimensional support containing
    /// every mode that occurs.
    pub fn evaluate(&self, at: &FieldPair) -> Result<FieldPair> {
        let ms = at.modes();
        if ms.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: ms.dim() });
        }
        let idx = |k: i64| -> Result<usize> {
            ms.index_of(&ModeIndex::new(&[k])?)
                .ok_or_else(|| Error::SupportMismatch(format!("mode {k} is not in the evaluation support")))
        };
        let mut out = [vec![Complex64::new(0.0, 0.0); ms.len()], vec![Complex64::new(0.0, 0.0); ms.len()]];
        for c in 0..2 {
            for (m, v) in &self.components[c] {
                let mut acc = v.to_complex();
                for (var, k) in &m.factors {
                    let f = if *var == Var::U { &at.first } else { &at.second };
                    acc *= f.coeffs()[idx(*k)?];
                }
                out[c][idx(m.output_mode)?] += acc;
            }
        }
        let [a, b] = out;
        FieldPair::new(SpectralField::from_coeffs(ms, a)?, SpectralField::from_coeffs(ms, b)?)
    }

    /// One monomial per line:
    /// `component output_mode factors re_num/re_den im_num/im_den`, factors
    /// written as `u3,v-1` (or `1` for the empty product).
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for c in 0..2 {
            for (m, v) in &self.components[c] {
                let factors = if m.factors.is_empty() {
                    "1".to_string()
                } else {
                    m.factors
                        .iter()
                        .map(|(var, k)| format!("{}{k}", if *var == Var::U { 'u' } else { 'v' }))
                        .collect::<Vec<_>>()
                        .join(",")
                };
                let _ = writeln!(s, "{} {} {factors} {v}", c + 1, m.output_mode);
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: n + 1, msg: msg.to_string() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 5 {
                return Err(err("expected five fields"));
            }
            let comp: usize = parts[0].parse().map_err(|_| err("bad component"))?;
            if !(1..=2).contains(&comp) {
                return Err(err("component must be 1 or 2"));
            }
            let mode: i64 = parts[1].parse().map_err(|_| err("bad output mode"))?;
            let mut factors = Vec::new();
            if parts[2] != "1" {
                for f in parts[2].split(',') {
                    let var = match f.chars().next() {
                        Some('u') => Var::U,
                        Some('v') => Var::V,
                        _ => return Err(err("factor must start with u or v")),
                    };
                    factors.push((var, f[1..].parse().map_err(|_| err("bad factor mode"))?));
                }
            }
            let rat = |s: &str| -> Result<BigRational> {
                let (a, b) = s.split_once('/').ok_or_else(|| err("expected numerator/denominator"))?;
                let a: BigInt = a.parse().map_err(|_| err("bad numerator"))?;
                let b: BigInt = b.parse().map_err(|_| err("bad denominator"))?;
                if b == BigInt::from(0) {
                    return Err(err("zero denominator"));
                }
                Ok(BigRational::new(a, b))
            };
            let v = CRational::new(rat(parts[3])?, rat(parts[4])?);
            out.add_term(comp - 1, Monomial::new(mode, factors), v);
        }
        Ok(out)
    }
}

/// Coefficients present in one field but not matched in the other.
#[derive(Clone, Debug, Default)]
pub struct CompareReport {
    /// `(component, monomial, a - b)`.
    pub entries: Vec<(usize, Monomial, CRational)>,
}

impl CompareReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn compare_fields(a: &PolynomialVectorField, b: &PolynomialVectorField) -> CompareReport {
    let mut entries = Vec::new();
    for c in 0..2 {
        for (m, v) in &a.components[c] {
            let d = match b.components[c].get(m) {
                Some(w) => v - w,
                None => v.clone(),
            };
            if !d.is_zero() {
                entries.push((c, m.clone(), d));
            }
        }
        for (m, w) in &b.components[c] {
            if !a.components[c].contains_key(m) {
                entries.push((c, m.clone(), -w));
            }
        }
    }
    CompareReport { entries }
}

fn context(modes: &[i64], max_degree: usize) -> Result<Ctx> {
    if modes.is_empty() || modes.len() > MAX_ORACLE_MODES {
        return Err(Error::InvalidArgument(format!(
            "oracle mode sets hold 1 to {MAX_ORACLE_MODES} modes, got {}",
            modes.len()
        )));
    }
    let mut v = modes.to_vec();
    v.sort();
    v.dedup();
    if v.len() != modes.len() || v.contains(&0) || v.iter().any(|k| !v.contains(&-k)) {
        return Err(Error::InvalidArgument("oracle modes must be distinct, nonzero and closed under negation".into()));
    }
    Ok(Ctx::new(v, max_degree))
}

/// `{+-n}` for each `n`.
pub fn symmetric_modes(ns: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = ns.iter().flat_map(|&n| [n, -n]).collect();
    v.sort();
    v
}

/// The once- and twice-normalised fields expanded through `max_degree`.
#[derive(Clone, Debug)]
pub struct Pushforward {
    /// `(I + K)^{-1} X(Phi4)`.
    pub x_plus: PolynomialVectorField,
    /// `(I + K5)^{-1} X+(Phi5)`.
    pub w: PolynomialVectorField,
}

struct Expansion {
    ctx: Ctx,
    x_plus: Pair,
    w: Pair,
}

fn expand(modes: &[i64], max_degree: usize, table: &CoefficientTable) -> Result<Expansion> {
    if max_degree != 3 && max_degree != 5 {
        return Err(Error::InvalidArgument(format!("expansion degree must be 3 or 5, got {max_degree}")));
    }
    let ctx = context(modes, max_degree)?;
    let x = ctx.vars();
    let m4 = ctx.m_quadratic(&x, &x);
    let phi4 = ctx.add(&x, &m4);
    let x_plus = ctx.neumann(|r| ctx.jvp(&m4, r), &ctx.x_field(&phi4));
    let w = if max_degree == 3 {
        x_plus.clone()
    } else {
        let m5 = ctx.m_quartic(table, &x, &x);
        let phi5 = ctx.add(&x, &m5);
        ctx.neumann(|r| ctx.jvp(&m5, r), &ctx.subst(&x_plus, &phi5))
    };
    Ok(Expansion { ctx, x_plus, w })
}

pub fn expand_pushforward(modes: &[i64], max_degree: usize) -> Result<Pushforward> {
    let e = expand(modes, max_degree, &CoefficientTable::standard())?;
    Ok(Pushforward {
        x_plus: PolynomialVectorField::from_pair(&e.ctx, &e.x_plus),
        w: PolynomialVectorField::from_pair(&e.ctx, &e.w),
    })
}

/// The four resonant quintic sums as exact polynomials.
pub fn expand_w5_direct(modes: &[i64]) -> Result<PolynomialVectorField> {
    let ctx = context(modes, 5)?;
    Ok(PolynomialVectorField::from_pair(&ctx, &ctx.w5_direct(&ctx.vars())))
}

/// The resonant cubic field of the closed formula, for comparison with the
/// cubic part of the expansion.
pub fn expand_x3_plus(modes: &[i64]) -> Result<PolynomialVectorField> {
    let ctx = context(modes, 3)?;
    Ok(PolynomialVectorField::from_pair(&ctx, &ctx.x3_plus(&ctx.vars())))
}

/// Outcome of the exact check of the normal-form construction.
#[derive(Clone, Debug)]
pub struct HomologicalReport {
    /// Cubic part of `X+` against `Q D1 + X3+`.
    pub cubic: CompareReport,
    /// `X5+ + D1(M(y)y) - K(y) D1 y` against the closed-form `W5`.
    pub homological: CompareReport,
    /// Quintic part of `W` against `[P]_4 D1 + Q X3+ + W5`.
    pub quintic: CompareReport,
    /// Monomials of the quintic part of `W` outside the four resonant
    /// index families.
    pub nonresonant: Vec<(usize, Monomial)>,
    /// `X5+` extracted from the expansion, for numeric cross-checks.
    pub x5_plus: PolynomialVectorField,
}

impl HomologicalReport {
    pub fn passed(&self) -> bool {
        self.cubic.is_empty() && self.homological.is_empty() && self.quintic.is_empty() && self.nonresonant.is_empty()
    }

    pub fn discrepancy_count(&self) -> usize {
        self.cubic.entries.len() + self.homological.entries.len() + self.quintic.entries.len() + self.nonresonant.len()
    }
}

pub fn verify_homological_equation(modes: &[i64], table: &CoefficientTable) -> Result<HomologicalReport> {
    let e = expand(modes, 5, table)?;
    let ctx = &e.ctx;
    let x = ctx.vars();
    let q = ctx.q(&x);
    let d1 = ctx.d1(&x);
    let x3 = ctx.x3_plus(&x);

    let cubic_expected = ctx.add(&ctx.mul_poly(&d1, &q), &x3);
    let cubic = diff(ctx, &ctx.degree_part(&e.x_plus, 3), &cubic_expected);

    // P(Phi4 x) = sqrt(1 + 2 phi(Q(Phi4 x))) - 1 = Q - (3/2) Q^2 + ...
    let m4 = ctx.m_quadratic(&x, &x);
    let q_moved = ctx.q(&ctx.add(&x, &m4));
    let p4 = q_moved.degree_part(4).add(&q.mul(&q, 5).scale(&CRational::ratio(-3, 2)));
    let lower5 = ctx.add(&ctx.mul_poly(&d1, &p4), &ctx.mul_poly(&x3, &q));
    let x5 = ctx.sub(&ctx.degree_part(&e.x_plus, 5), &lower5);

    let m5 = ctx.m_quartic(table, &x, &x);
    let lhs = ctx.sub(&ctx.add(&x5, &ctx.d1(&m5)), &ctx.jvp(&m5, &d1));
    let w5 = ctx.w5_direct(&x);
    let homological = diff(ctx, &lhs, &w5);

    let w_quintic = ctx.degree_part(&e.w, 5);
    let quintic = diff(ctx, &w_quintic, &ctx.add(&lower5, &w5));
    let survivors = PolynomialVectorField::from_pair(ctx, &ctx.sub(&w_quintic, &lower5));
    let nonresonant = nonresonant_monomials(&survivors);
    Ok(HomologicalReport { cubic, homological, quintic, nonresonant, x5_plus: PolynomialVectorField::from_pair(ctx, &x5) })
}

fn diff(ctx: &Ctx, a: &Pair, b: &Pair) -> CompareReport {
    compare_fields(&PolynomialVectorField::from_pair(ctx, a), &PolynomialVectorField::from_pair(ctx, b))
}

/// Whether a first-component quintic monomial at output mode `k` belongs
/// to one of the resonant families
/// `u_j u_-j v_l v_-l u_k` (|j| = |l|), `u_j u_-j u_l u_-l v_k` (|k| = |j| + |l|),
/// `u_j u_-j u_l v_-l v_k` (|j| = |k|), `u_j u_-j v_l v_-l v_k` (|k| = |j| - |l|).
fn is_resonant(m: &Monomial, modes: &[i64]) -> bool {
    let k = m.output_mode;
    let (u, v) = (Var::U, Var::V);
    let r2 = |x: i64| x * x;
    for &j in modes {
        for &l in modes {
            let candidates: [(bool, [Factor; 5]); 4] = [
                (j.abs() == l.abs(), [(u, j), (u, -j), (v, l), (v, -l), (u, k)]),
                (sum_resonant(r2(j), r2(l), r2(k)), [(u, j), (u, -j), (u, l), (u, -l), (v, k)]),
                (j.abs() == k.abs(), [(u, j), (u, -j), (u, l), (v, -l), (v, k)]),
                (diff_resonant(r2(j), r2(l), r2(k)), [(u, j), (u, -j), (v, l), (v, -l), (v, k)]),
            ];
            for (ok, f) in candidates {
                if ok {
                    let mut f = f.to_vec();
                    f.sort();
                    if f == m.factors {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn nonresonant_monomials(f: &PolynomialVectorField) -> Vec<(usize, Monomial)> {
    let modes: Vec<i64> = {
        let mut v: Vec<i64> = f.components.iter().flat_map(|c| c.keys().map(|m| m.output_mode)).collect();
        v.sort();
        v.dedup();
        v
    };
    let mut out = Vec::new();
    for c in 0..2 {
        for m in f.components[c].keys() {
            // the second component is the mirror image of the first
            let probe = if c == 0 {
                m.clone()
            } else {
                Monomial::new(m.output_mode, m.factors.iter().map(|(var, k)| (var.swapped(), *k)).collect())
            };
            if m.degree() != 5 || !is_resonant(&probe, &modes) {
                out.push((c, m.clone()));
            }
        }
    }
    out
}

/// The one-dimensional numeric support matching an oracle mode list.
pub fn numeric_support(modes: &[i64]) -> Result<Arc<ModeSet>> {
    ModeSet::from_modes(1, modes.iter().map(|&k| ModeIndex::new(&[k])).collect::<Result<Vec<_>>>()?)
}
