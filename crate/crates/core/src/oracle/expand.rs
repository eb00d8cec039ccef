//! Polynomial vector fields in the variables `u_k, v_k` and the symbolic
//! operations needed to push a field through a near-identity map.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ring::{CRational, Poly, Var};
use crate::coefficients::formulas::{w5, Triple};
use crate::coefficients::{CoefficientTable, QuinticKind};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A one-dimensional mode universe with a degree cap.
pub(crate) struct Ctx {
    pub(crate) modes: Vec<i64>,
    neg: Vec<usize>,
    pub(crate) max_deg: usize,
}

/// One polynomial per mode.
pub(crate) type Field = Vec<Poly>;
pub(crate) type Pair = [Field; 2];

impl Ctx {
    pub(crate) fn new(modes: Vec<i64>, max_deg: usize) -> Self {
        let neg = modes.iter().map(|m| modes.iter().position(|x| *x == -m).expect("symmetric")).collect();
        Self { modes, neg, max_deg }
    }

    fn zero_field(&self) -> Field {
        vec![Poly::default(); self.modes.len()]
    }

    pub(crate) fn vars(&self) -> Pair {
        [
            self.modes.iter().map(|&k| Poly::var(Var::U, k)).collect(),
            self.modes.iter().map(|&k| Poly::var(Var::V, k)).collect(),
        ]
    }

    fn radius(&self, i: usize) -> i64 {
        self.modes[i].abs()
    }

    pub(crate) fn add(&self, a: &Pair, b: &Pair) -> Pair {
        [0, 1].map(|c| a[c].iter().zip(&b[c]).map(|(x, y)| x.add(y)).collect())
    }

    pub(crate) fn sub(&self, a: &Pair, b: &Pair) -> Pair {
        [0, 1].map(|c| a[c].iter().zip(&b[c]).map(|(x, y)| x.sub(y)).collect())
    }

    fn scale_field(&self, a: &Field, c: &CRational) -> Field {
        a.iter().map(|x| x.scale(c)).collect()
    }

    pub(crate) fn scale(&self, a: &Pair, c: &CRational) -> Pair {
        [self.scale_field(&a[0], c), self.scale_field(&a[1], &c)]
    }

    /// Multiplication by a scalar polynomial.
    pub(crate) fn mul_poly(&self, a: &Pair, p: &Poly) -> Pair {
        [0, 1].map(|c| a[c].iter().map(|x| x.mul(p, self.max_deg)).collect())
    }

    pub(crate) fn truncate(&self, a: &Pair) -> Pair {
        [0, 1].map(|c| a[c].iter().map(|x| x.truncate(self.max_deg)).collect())
    }

    pub(crate) fn degree_part(&self, a: &Pair, d: usize) -> Pair {
        [0, 1].map(|c| a[c].iter().map(|x| x.degree_part(d)).collect())
    }

    fn lambda(&self, a: &Field) -> Field {
        a.iter().enumerate().map(|(i, x)| x.scale(&CRational::real(int(self.radius(i))))).collect()
    }

    /// `sum_j a_j b_-j`.
    fn pairing(&self, a: &Field, b: &Field) -> Poly {
        let mut out = Poly::default();
        for i in 0..self.modes.len() {
            out.add_assign(&a[i].mul(&b[self.neg[i]], self.max_deg));
        }
        out
    }

    /// `out_k = h_k sum_j u_j v_-j K(|j|, |k|)`.
    fn quad(&self, kernel: impl Fn(i64, i64) -> BigRational, u: &Field, v: &Field, h: &Field) -> Field {
        (0..self.modes.len())
            .map(|k| {
                let mut s = Poly::default();
                for j in 0..self.modes.len() {
                    let c = kernel(self.radius(j), self.radius(k));
                    if !c.is_zero() {
                        s.add_scaled(&u[j].mul(&v[self.neg[j]], self.max_deg), &CRational::real(c));
                    }
                }
                s.mul(&h[k], self.max_deg)
            })
            .collect()
    }

    /// `out_k = h_k sum_{j,l} a_j b_-j c_l d_-l K(|j|, |l|, |k|)`.
    fn quartic(
        &self,
        kernel: impl Fn(i64, i64, i64) -> BigRational,
        f: [&Field; 4],
        h: &Field,
    ) -> Field {
        let n = self.modes.len();
        let first: Vec<Poly> = (0..n).map(|j| f[0][j].mul(&f[1][self.neg[j]], self.max_deg)).collect();
        let second: Vec<Poly> = (0..n).map(|l| f[2][l].mul(&f[3][self.neg[l]], self.max_deg)).collect();
        (0..n)
            .map(|k| {
                let mut s = Poly::default();
                for j in 0..n {
                    if first[j].is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        let c = kernel(self.radius(j), self.radius(l), self.radius(k));
                        if !c.is_zero() {
                            s.add_scaled(&first[j].mul(&second[l], self.max_deg), &CRational::real(c));
                        }
                    }
                }
                s.mul(&h[k], self.max_deg)
            })
            .collect()
    }

    /// `(-i|D| eta, i|D| psi)`.
    pub(crate) fn d1(&self, x: &Pair) -> Pair {
        let i = CRational::i();
        [self.scale_field(&self.lambda(&x[0]), &-&i), self.scale_field(&self.lambda(&x[1]), &i)]
    }

    /// `(1/4) <|D|(eta + psi), eta + psi>`.
    pub(crate) fn q(&self, x: &Pair) -> Poly {
        let s: Field = x[0].iter().zip(&x[1]).map(|(a, b)| a.add(b)).collect();
        self.pairing(&self.lambda(&s), &s).scale(&CRational::ratio(1, 4))
    }

    /// The `(eta, psi)` field with `sqrt(1+2P)` and `1/(1+2P)` expanded in `Q`
    /// through the order a quintic computation needs.
    pub(crate) fn x_field(&self, x: &Pair) -> Pair {
        let qv = self.q(x);
        let q2 = qv.mul(&qv, self.max_deg);
        let one = Poly::constant(CRational::ratio(1, 1));
        let root = one.add(&qv).add(&q2.scale(&CRational::ratio(-3, 2)));
        let inv = one.add(&qv.scale(&CRational::ratio(-2, 1))).add(&q2.scale(&CRational::ratio(6, 1)));
        let (le, lp) = (self.lambda(&x[0]), self.lambda(&x[1]));
        let diff = self.pairing(&lp, &lp).sub(&self.pairing(&le, &le));
        let b = inv.mul(&diff, self.max_deg).scale(&(&CRational::i() * &CRational::ratio(1, 4)));
        let swapped = [x[1].clone(), x[0].clone()];
        self.add(&self.mul_poly(&self.d1(x), &root), &self.mul_poly(&swapped, &b))
    }

    /// `M(y) a` for the quadratic transformation: first row
    /// `A12[w, w] beta + C12[z, z] beta`.
    pub(crate) fn m_quadratic(&self, y: &Pair, a: &Pair) -> Pair {
        let a12 = |j: i64, k: i64| if j == k { BigRational::zero() } else { q(j * j, 8 * (j - k)) };
        let c12 = |j: i64, k: i64| q(j * j, 8 * (j + k));
        let first = add_fields(&self.quad(a12, &y[0], &y[0], &a[1]), &self.quad(c12, &y[1], &y[1], &a[1]));
        let second = add_fields(&self.quad(a12, &y[1], &y[1], &a[0]), &self.quad(c12, &y[0], &y[0], &a[0]));
        [first, second]
    }

    /// Resonant cubic part.
    pub(crate) fn x3_plus(&self, x: &Pair) -> Pair {
        let k = |j: i64, k: i64| if j == k { q(j * j, 4) } else { BigRational::zero() };
        let i = CRational::i();
        [
            self.scale_field(&self.quad(k, &x[0], &x[0], &x[1]), &-&i),
            self.scale_field(&self.quad(k, &x[1], &x[1], &x[0]), &i),
        ]
    }

    fn m_row(&self, table: &CoefficientTable, kinds: &[(QuinticKind, [usize; 4])], y: &[&Field; 2], h: &Field) -> Field {
        let mut out = self.zero_field();
        for (kind, slots) in kinds {
            let kernel = |j: i64, l: i64, k: i64| {
                table.value::<BigRational>(*kind, j * j, l * l, k * k).expect("integer radii")
            };
            let f = slots.map(|s| y[s]);
            out = add_fields(&out, &self.quartic(kernel, f, h));
        }
        out
    }

    /// `M(u, v) a` for the quartic transformation, using `table`.
    pub(crate) fn m_quartic(&self, table: &CoefficientTable, y: &Pair, a: &Pair) -> Pair {
        use QuinticKind::*;
        // slot 0 is the first variable of the row, slot 1 the second
        let m11 = [(A11, [0, 0, 0, 0]), (C11, [0, 0, 1, 1]), (F11, [1, 1, 1, 1])];
        let m12 = [(A12, [0, 0, 0, 0]), (B12, [0, 0, 0, 1]), (C12, [0, 0, 1, 1]), (D12, [0, 1, 1, 1]), (F12, [1, 1, 1, 1])];
        let uv = [&y[0], &y[1]];
        let vu = [&y[1], &y[0]];
        let first = add_fields(&self.m_row(table, &m11, &uv, &a[0]), &self.m_row(table, &m12, &uv, &a[1]));
        let second = add_fields(&self.m_row(table, &m12, &vu, &a[0]), &self.m_row(table, &m11, &vu, &a[1]));
        [first, second]
    }

    /// The resonant quintic normal form from its closed-form kernels.
    pub(crate) fn w5_direct(&self, y: &Pair) -> Pair {
        let t = |j: i64, l: i64, k: i64| Triple::<BigRational>::new(j * j, l * l, k * k).expect("integer radii");
        let k1 = |j, l, k| w5::equal_radii(&t(j, l, k));
        let k2 = |j, l, k| w5::sum_radii(&t(j, l, k));
        let k3 = |j, l, k| w5::equal_outer(&t(j, l, k));
        let k4 = |j, l, k| w5::difference_radii(&t(j, l, k));
        let row = |u: &Field, v: &Field| {
            let mut r = self.quartic(k1, [u, u, v, v], u);
            r = add_fields(&r, &self.quartic(k2, [u, u, u, u], v));
            r = add_fields(&r, &self.quartic(k3, [u, u, u, v], v));
            add_fields(&r, &self.quartic(k4, [u, u, v, v], v))
        };
        let i = CRational::i();
        [self.scale_field(&row(&y[0], &y[1]), &i), self.scale_field(&row(&y[1], &y[0]), &-&i)]
    }

    /// Directional derivative of a field given by polynomials in the base
    /// variables, in the direction `r`.
    pub(crate) fn jvp(&self, g: &Pair, r: &Pair) -> Pair {
        [0, 1].map(|c| {
            g[c].iter()
                .map(|poly| {
                    let mut acc = Poly::default();
                    for (m, coeff) in &poly.0 {
                        let mut i = 0;
                        while i < m.len() {
                            let f = m[i];
                            let mult = m.iter().filter(|x| **x == f).count();
                            let mut rest = m.clone();
                            rest.remove(i);
                            let dir = &r[if f.0 == Var::U { 0 } else { 1 }][self.index(f.1)];
                            let mut mono = Poly::default();
                            mono.add_term(rest, coeff * &CRational::ratio(mult as i64, 1));
                            acc.add_assign(&mono.mul(dir, self.max_deg));
                            i += mult;
                        }
                    }
                    acc
                })
                .collect()
        })
    }

    /// Replaces `u_k, v_k` by the components of `s`.
    pub(crate) fn subst(&self, g: &Pair, s: &Pair) -> Pair {
        [0, 1].map(|c| {
            g[c].iter()
                .map(|poly| {
                    let mut acc = Poly::default();
                    for (m, coeff) in &poly.0 {
                        let mut t = Poly::constant(coeff.clone());
                        for f in m {
                            t = t.mul(&s[if f.0 == Var::U { 0 } else { 1 }][self.index(f.1)], self.max_deg);
                            if t.is_zero() {
                                break;
                            }
                        }
                        acc.add_assign(&t);
                    }
                    acc
                })
                .collect()
        })
    }

    /// `(I + K)^{-1} r`, truncated by degree; terminates because `K` raises
    /// the degree.
    pub(crate) fn neumann(&self, k: impl Fn(&Pair) -> Pair, r: &Pair) -> Pair {
        let mut total = self.truncate(r);
        let mut term = total.clone();
        loop {
            term = self.truncate(&self.scale(&k(&term), &CRational::ratio(-1, 1)));
            if term.iter().all(|f| f.iter().all(Poly::is_zero)) {
                return total;
            }
            total = self.add(&total, &term);
        }
    }

    fn index(&self, mode: i64) -> usize {
        self.modes.iter().position(|m| *m == mode).expect("mode in universe")
    }
}

fn add_fields(a: &Field, b: &Field) -> Field {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}
