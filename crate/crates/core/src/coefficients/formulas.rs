//! Closed-form kernels of the quartic normal-form transformation, the
//! collected quintic vector field and the resonant quintic normal form.
//!
//! Every kernel is a function of three radii `(j, l, k)`. Kronecker symbols
//! compare radii exactly through squared norms; a term whose numerator carries
//! a vanishing `(1 - delta)` factor is dropped rather than evaluated.

use super::scalar::{one, Scalar};
use crate::lattice::{diff_resonant, sum_resonant};

/// Three radii with their exact squares.
#[derive(Clone, Debug)]
pub struct Triple<T> {
    pub j2: i64,
    pub l2: i64,
    pub k2: i64,
    pub j: T,
    pub l: T,
    pub k: T,
}

impl<T: Scalar> Triple<T> {
    pub fn new(j2: i64, l2: i64, k2: i64) -> Option<Self> {
        Some(Self { j2, l2, k2, j: T::radius(j2)?, l: T::radius(l2)?, k: T::radius(k2)? })
    }

    fn jj(&self) -> T {
        T::from_i64(self.j2)
    }
    fn ll(&self) -> T {
        T::from_i64(self.l2)
    }
    fn eq_jk(&self) -> bool {
        self.j2 == self.k2
    }
    fn eq_lk(&self) -> bool {
        self.l2 == self.k2
    }
    fn eq_jl(&self) -> bool {
        self.j2 == self.l2
    }
}

fn c<T: Scalar>(num: i64, den: i64) -> T {
    T::ratio(num, den)
}

fn inv<T: Scalar>(x: T) -> T {
    one::<T>() / x
}

pub fn a11<T: Scalar>(t: &Triple<T>) -> T {
    let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
    t.jj() * t.ll() / (c::<T>(128, 1) * (j.clone() + l.clone()))
        * (inv(j + k.clone()) + inv(l + k))
}

pub fn c11<T: Scalar>(t: &Triple<T>) -> T {
    if t.eq_jl() {
        return T::zero();
    }
    let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
    let mut br = inv(j.clone() + k.clone());
    if t.eq_lk() && !t.eq_jk() {
        br = br - inv(j.clone() - k.clone());
    }
    if !t.eq_lk() {
        br = br - inv(l.clone() - k);
    }
    c::<T>(1, 64) * t.jj() * t.ll() * br / (l - j)
}

pub fn f11<T: Scalar>(t: &Triple<T>) -> T {
    let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
    let mut br = T::zero();
    let deltas = t.eq_lk() as i64 + t.eq_jk() as i64;
    if deltas > 0 {
        br = br - T::from_i64(deltas) / (j.clone() + l.clone());
    }
    if !t.eq_jk() {
        br = br + inv(j.clone() - k.clone());
    }
    if !t.eq_lk() {
        br = br + inv(l.clone() - k);
    }
    c::<T>(1, 128) * br * t.jj() * t.ll() / (j + l)
}

pub fn a12<T: Scalar>(t: &Triple<T>) -> T {
    if sum_resonant(t.j2, t.l2, t.k2) {
        return T::zero();
    }
    let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
    c::<T>(3, 64) * j.clone() * l.clone() * (j.clone() + l.clone()) / (k - j - l)
}

pub fn b12<T: Scalar>(t: &Triple<T>) -> T {
    if t.eq_jk() {
        return T::zero();
    }
    let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
    let mut br = c::<T>(6, 1) + l.clone() / (l.clone() + j.clone());
    if t.eq_jl() {
        if !t.eq_lk() {
            br = br + l.clone() / (l.clone() - k.clone());
        }
    } else {
        br = br + l.clone() / (l.clone() - j.clone());
    }
    t.jj() * l * c::<T>(1, 32) * br / (k - j)
}

pub fn c12<T: Scalar>(t: &Triple<T>) -> T {
    // k = j - l  <=>  j = k + l
    if diff_resonant(t.j2, t.l2, t.k2) {
        return T::zero();
    }
    let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
    c::<T>(3, 32) * j.clone() * l.clone() * (j.clone() - l.clone()) / (k - j + l)
}

pub fn d12<T: Scalar>(t: &Triple<T>) -> T {
    let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
    let mut br = c::<T>(-6, 1) - j.clone() / (l.clone() + j.clone());
    if t.eq_jl() {
        br = br - j.clone() / (j.clone() + k.clone());
    } else {
        br = br + j.clone() / (l.clone() - j.clone());
    }
    j * t.ll() / (c::<T>(32, 1) * (k + l)) * br
}

pub fn f12<T: Scalar>(t: &Triple<T>) -> T {
    let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
    -(c::<T>(3, 1) * j.clone() * l.clone() * (j.clone() + l.clone())) / (c::<T>(64, 1) * (k + j + l))
}

/// Real kernels of the eight collected quintic terms; the vector field is
/// `i` times the kernel. `*_sym` are the `j <-> l` symmetrisations.
pub mod y {
    use super::*;

    pub fn y4_11<T: Scalar>(t: &Triple<T>) -> T {
        -(t.jj() * t.ll()) / (c::<T>(32, 1) * (t.j.clone() + t.k.clone()))
    }
    pub fn y4_11_sym<T: Scalar>(t: &Triple<T>) -> T {
        -(t.jj() * t.ll()) * c::<T>(1, 64) * (inv(t.j.clone() + t.k.clone()) + inv(t.l.clone() + t.k.clone()))
    }
    pub fn y2_11<T: Scalar>(t: &Triple<T>) -> T {
        let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
        let mut br = inv(j.clone() + k.clone());
        if t.eq_lk() && !t.eq_jk() {
            br = br - inv(j - k.clone());
        }
        if !t.eq_lk() {
            br = br - inv(l - k);
        }
        t.jj() * t.ll() * c::<T>(1, 32) * br
    }
    pub fn y0_11<T: Scalar>(t: &Triple<T>) -> T {
        let (j, k) = (t.j.clone(), t.k.clone());
        let mut br = T::zero();
        if t.eq_lk() {
            br = br - inv(j.clone() + k.clone());
        }
        if !t.eq_jk() {
            br = br + inv(j - k);
        }
        t.jj() * t.ll() * c::<T>(1, 32) * br
    }
    pub fn y0_11_sym<T: Scalar>(t: &Triple<T>) -> T {
        f11(t) * (t.j.clone() + t.l.clone()) * c::<T>(2, 1)
    }
    pub fn y4_12<T: Scalar>(t: &Triple<T>) -> T {
        c::<T>(3, 16) * t.jj() * t.l.clone()
    }
    pub fn y4_12_sym<T: Scalar>(t: &Triple<T>) -> T {
        c::<T>(3, 32) * t.j.clone() * t.l.clone() * (t.j.clone() + t.l.clone())
    }
    pub fn y3_12<T: Scalar>(t: &Triple<T>) -> T {
        let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
        let mut br = c::<T>(6, 1) + l.clone() / (l.clone() + j.clone());
        if t.eq_jl() {
            if !t.eq_lk() {
                br = br + l.clone() / (l.clone() - k);
            }
        } else {
            br = br + l.clone() / (l.clone() - j);
        }
        t.jj() * l * c::<T>(1, 16) * br
    }
    pub fn y2_12<T: Scalar>(t: &Triple<T>) -> T {
        c::<T>(3, 16) * t.j.clone() * t.l.clone() * (t.j.clone() - t.l.clone())
    }
    pub fn y1_12<T: Scalar>(t: &Triple<T>) -> T {
        let (j, l, k) = (t.j.clone(), t.l.clone(), t.k.clone());
        let mut br = c::<T>(-6, 1) - j.clone() / (l.clone() + j.clone());
        if t.eq_jl() {
            br = br - j.clone() / (j.clone() + k);
        } else {
            br = br + j.clone() / (l - j.clone());
        }
        j * t.ll() * c::<T>(1, 16) * br
    }
    pub fn y0_12<T: Scalar>(t: &Triple<T>) -> T {
        -(c::<T>(3, 16) * t.jj() * t.l.clone())
    }
    pub fn y0_12_sym<T: Scalar>(t: &Triple<T>) -> T {
        -(c::<T>(3, 32) * t.j.clone() * t.l.clone() * (t.j.clone() + t.l.clone()))
    }
}

/// Real kernels of the four resonant sums of the quintic normal form; the
/// first component is `i` times their sum.
pub mod w5 {
    use super::*;

    /// `|j| = |l|`, monomial `u_j u_-j v_l v_-l u_k`.
    pub fn equal_radii<T: Scalar>(t: &Triple<T>) -> T {
        if !t.eq_jl() {
            return T::zero();
        }
        let mut br = inv(t.j.clone() + t.k.clone());
        if !t.eq_lk() {
            br = br - inv(t.l.clone() - t.k.clone());
        }
        t.jj() * t.ll() * c::<T>(1, 32) * br
    }
    /// `|k| = |j| + |l|`, monomial `u_j u_-j u_l u_-l v_k`.
    pub fn sum_radii<T: Scalar>(t: &Triple<T>) -> T {
        if !sum_resonant(t.j2, t.l2, t.k2) {
            return T::zero();
        }
        c::<T>(3, 32) * t.j.clone() * t.l.clone() * t.k.clone()
    }
    /// `|j| = |k|`, monomial `u_j u_-j u_l v_-l v_k`.
    pub fn equal_outer<T: Scalar>(t: &Triple<T>) -> T {
        if !t.eq_jk() {
            return T::zero();
        }
        let (j, l) = (t.j.clone(), t.l.clone());
        let mut br = c::<T>(6, 1) + l.clone() / (l.clone() + j.clone());
        if !t.eq_jl() {
            br = br + l.clone() / (l.clone() - j);
        }
        t.jj() * l * c::<T>(1, 16) * br
    }
    /// `|k| = |j| - |l|`, monomial `u_j u_-j v_l v_-l v_k`.
    pub fn difference_radii<T: Scalar>(t: &Triple<T>) -> T {
        if !diff_resonant(t.j2, t.l2, t.k2) {
            return T::zero();
        }
        c::<T>(3, 16) * t.j.clone() * t.l.clone() * t.k.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(j: i64, l: i64, k: i64) -> Triple<f64> {
        Triple::new(j * j, l * l, k * k).unwrap()
    }

    #[test]
    fn symmetrised_y_kernels() {
        for (j, l, k) in [(1, 2, 3), (2, 2, 1), (3, 1, 3), (1, 1, 1), (2, 3, 2)] {
            let a = y::y4_11(&t(j, l, k)) + y::y4_11(&t(l, j, k));
            assert!((a - 2.0 * y::y4_11_sym(&t(j, l, k))).abs() < 1e-13);
            let b = y::y0_11(&t(j, l, k)) + y::y0_11(&t(l, j, k));
            assert!((b - 2.0 * y::y0_11_sym(&t(j, l, k))).abs() < 1e-13);
            let c = y::y4_12(&t(j, l, k)) + y::y4_12(&t(l, j, k));
            assert!((c - 2.0 * y::y4_12_sym(&t(j, l, k))).abs() < 1e-13);
        }
    }
}
