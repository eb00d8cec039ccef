use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Exact Gaussian rational `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::from_integer(BigInt::from(1)))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} {}/{}", self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom())
    }
}

impl Add for &CRational {
    type Output = CRational;
    fn add(self, o: &CRational) -> CRational {
        CRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &CRational {
    type Output = CRational;
    fn sub(self, o: &CRational) -> CRational {
        CRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &CRational {
    type Output = CRational;
    fn mul(self, o: &CRational) -> CRational {
        CRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Neg for &CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re.clone(), -self.im.clone())
    }
}

/// The two variable families: `u_k` and `v_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    V,
}

impl Var {
    pub fn swapped(self) -> Var {
        match self {
            Var::U => Var::V,
            Var::V => Var::U,
        }
    }
}

/// One variable at one mode.
pub type Factor = (Var, i64);

/// Sparse polynomial over sorted factor lists; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct Poly(pub(crate) BTreeMap<Vec<Factor>, CRational>);

impl Poly {
    pub(crate) fn constant(c: CRational) -> Self {
        let mut p = Poly::default();
        p.add_term(Vec::new(), c);
        p
    }

    pub(crate) fn var(v: Var, k: i64) -> Self {
        let mut p = Poly::default();
        p.add_term(vec![(v, k)], CRational::real(BigRational::from_integer(1.into())));
        p
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Vec<Factor>, c: CRational) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.0.remove(&m);
                }
            }
            None => {
                self.0.insert(m, c);
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Poly, c: &CRational) {
        for (m, v) in &other.0 {
            self.add_term(m.clone(), v * c);
        }
    }

    pub(crate) fn add_assign(&mut self, other: &Poly) {
        for (m, v) in &other.0 {
            self.add_term(m.clone(), v.clone());
        }
    }

    pub(crate) fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, v) in &other.0 {
            out.add_term(m.clone(), v.clone());
        }
        out
    }

    pub(crate) fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, v) in &other.0 {
            out.add_term(m.clone(), -v);
        }
        out
    }

    pub(crate) fn scale(&self, c: &CRational) -> Poly {
        let mut out = Poly::default();
        out.add_scaled(self, c);
        out
    }

    /// Product with every monomial of degree above `max_deg` dropped.
    pub(crate) fn mul(&self, other: &Poly, max_deg: usize) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                if m1.len() + m2.len() > max_deg {
                    continue;
                }
                let mut m: Vec<Factor> = m1.iter().chain(m2).copied().collect();
                m.sort();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub(crate) fn truncate(&self, max_deg: usize) -> Poly {
        Poly(self.0.iter().filter(|(m, _)| m.len() <= max_deg).map(|(m, c)| (m.clone(), c.clone())).collect())
    }

    pub(crate) fn degree_part(&self, d: usize) -> Poly {
        Poly(self.0.iter().filter(|(m, _)| m.len() == d).map(|(m, c)| (m.clone(), c.clone())).collect())
    }
}
