//! Integer lattice modes and exact predicates on their radii.
//!
//! Radii of lattice points are square roots of integers, so every resonance
//! question is decided on squared radii in integer arithmetic.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 3;

/// A nonzero point of Z^d, 1 <= d <= 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    dim: u8,
    c: [i64; MAX_DIM],
}

impl ModeIndex {
    pub fn new(components: &[i64]) -> Result<Self> {
        let d = components.len();
        if d == 0 || d > MAX_DIM {
            return Err(Error::InvalidMode(format!("dimension {d} not in 1..=3")));
        }
        if components.iter().all(|&x| x == 0) {
            return Err(Error::InvalidMode("the zero mode is excluded".into()));
        }
        let mut c = [0; MAX_DIM];
        c[..d].copy_from_slice(components);
        Ok(Self { dim: d as u8, c })
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn components(&self) -> &[i64] {
        &self.c[..self.dim()]
    }

    pub fn norm_sq(&self) -> i64 {
        self.components().iter().map(|x| x * x).sum()
    }

    pub fn radius(&self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }

    pub fn neg(&self) -> Self {
        let mut c = self.c;
        for x in c.iter_mut() {
            *x = -*x;
        }
        Self { dim: self.dim, c }
    }
}

impl fmt::Debug for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.components())
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `sqrt(c) == sqrt(a) + sqrt(b)` for nonnegative integers.
pub fn sum_resonant(a: i64, b: i64, c: i64) -> bool {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let e = c - a - b;
    e >= 0 && e * e == 4 * a * b
}

/// `sqrt(c) == sqrt(a) - sqrt(b)`, i.e. `sqrt(a) == sqrt(b) + sqrt(c)`.
pub fn diff_resonant(a: i64, b: i64, c: i64) -> bool {
    sum_resonant(b, c, a)
}

pub fn radius_of(norm_sq: i64) -> f64 {
    (norm_sq as f64).sqrt()
}

/// Whether `n` is a sum of `d` squares.
pub fn is_sum_of_squares(n: i64, d: usize) -> bool {
    if n < 0 {
        return false;
    }
    match d {
        0 => n == 0,
        1 => {
            let r = isqrt(n);
            r * r == n
        }
        _ => {
            let mut x = 0;
            while x * x <= n {
                if is_sum_of_squares(n - x * x, d - 1) {
                    return true;
                }
                x += 1;
            }
            false
        }
    }
}

pub fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Squared radii in `(0, max_norm_sq]` realised by points of Z^d.
pub fn shell_norms(dim: usize, max_norm_sq: i64) -> Vec<i64> {
    (1..=max_norm_sq).filter(|&n| is_sum_of_squares(n, dim)).collect()
}

/// All nonzero points of Z^d with `|k|^2 <= max_norm_sq`, sorted.
pub fn ball_points(dim: usize, max_norm_sq: i64) -> Vec<ModeIndex> {
    let r = isqrt(max_norm_sq);
    let mut out = Vec::new();
    let mut cur = vec![-r; dim];
    loop {
        let n: i64 = cur.iter().map(|x| x * x).sum();
        if n > 0 && n <= max_norm_sq {
            out.push(ModeIndex::new(&cur).expect("nonzero point"));
        }
        let mut i = 0;
        loop {
            if i == dim {
                out.sort();
                return out;
            }
            cur[i] += 1;
            if cur[i] <= r {
                break;
            }
            cur[i] = -r;
            i += 1;
        }
    }
}

/// One point of Z^d on the sphere of squared radius `n`, if any.
pub fn sphere_representative(dim: usize, n: i64) -> Option<ModeIndex> {
    fn go(n: i64, d: usize, acc: &mut Vec<i64>) -> bool {
        if d == 1 {
            let r = isqrt(n);
            if r * r == n {
                acc.push(r);
                return true;
            }
            return false;
        }
        let mut x = isqrt(n);
        while x >= 0 {
            acc.push(x);
            if go(n - x * x, d - 1, acc) {
                return true;
            }
            acc.pop();
            x -= 1;
        }
        false
    }
    if n <= 0 || dim == 0 || dim > MAX_DIM {
        return None;
    }
    let mut acc = Vec::with_capacity(dim);
    if go(n, dim, &mut acc) {
        ModeIndex::new(&acc).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonance_predicates() {
        assert!(sum_resonant(1, 1, 4));
        assert!(sum_resonant(1, 4, 9));
        assert!(!sum_resonant(1, 1, 2));
        // sqrt(8) = sqrt(2) + sqrt(2)
        assert!(sum_resonant(2, 2, 8));
        assert!(diff_resonant(9, 4, 1));
    }

    #[test]
    fn ball_counts() {
        assert_eq!(ball_points(1, 9).len(), 6);
        assert_eq!(ball_points(2, 1).len(), 4);
        assert_eq!(ball_points(2, 2).len(), 8);
        assert_eq!(ball_points(3, 1).len(), 6);
    }

    #[test]
    fn sums_of_squares() {
        assert_eq!(shell_norms(2, 10), vec![1, 2, 4, 5, 8, 9, 10]);
        assert_eq!(shell_norms(1, 10), vec![1, 4, 9]);
        assert!(!is_sum_of_squares(7, 3));
        assert_eq!(sphere_representative(2, 25).unwrap().norm_sq(), 25);
        assert!(sphere_representative(2, 3).is_none());
    }
}
