use std::sync::Arc;

use approx::assert_relative_eq;
use kirchhoff_nf::functional::RegularityParams;
use kirchhoff_nf::sample::Sampler;
use kirchhoff_nf::transforms::*;
use kirchhoff_nf::{Error, FieldPair, ModeIndex, ModeSet, SpectralField};
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: &FieldPair, b: &FieldPair) -> f64 {
    (a - b).sobolev_norm(0.0) / b.sobolev_norm(0.0).max(1e-300)
}

fn supports() -> Vec<Arc<ModeSet>> {
    vec![ModeSet::ball(1, 4.0).unwrap(), ModeSet::ball(2, 2.3).unwrap()]
}

fn at(f: &SpectralField, k: &[i64]) -> Complex64 {
    f.get(&ModeIndex::new(k).unwrap()).unwrap()
}

fn one_mode(ms: &Arc<ModeSet>, k: &[i64]) -> SpectralField {
    let mut f = SpectralField::zeros(ms);
    f.set(&ModeIndex::new(k).unwrap(), Complex64::new(1.0, 0.0)).unwrap();
    f
}

/// Brute-force `sum_j kernel(|j|, |k|) u_j v_-j h_k`.
fn brute_bilinear(kernel: impl Fn(f64, f64) -> f64, u: &SpectralField, v: &SpectralField, h: &SpectralField) -> SpectralField {
    let ms = h.modes().clone();
    SpectralField::from_fn(&ms, |i, k| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (jdx, j) in ms.modes().iter().enumerate() {
            acc += u.coeffs()[jdx] * v.get(&j.neg()).unwrap() * kernel(j.radius(), k.radius());
        }
        acc * h.coeffs()[i]
    })
}

fn a12_kernel(j: f64, k: f64) -> f64 {
    if (j - k).abs() < 1e-12 {
        0.0
    } else {
        j * j / (8.0 * (j - k))
    }
}

fn c12_kernel(j: f64, k: f64) -> f64 {
    j * j / (8.0 * (j + k))
}

#[test]
fn phi1_scales_by_half_powers() {
    let ms = ModeSet::line(&[4]).unwrap();
    let q = one_mode(&ms, &[4]);
    let uv = phi1(&FieldPair::new(q, SpectralField::zeros(&ms)).unwrap());
    assert_relative_eq!(at(&uv.first, &[4]).re, 0.5, max_relative = 1e-15);
    assert_eq!(uv.second.max_abs(), 0.0);
}

#[test]
fn phi2_makes_real_pairs_conjugate() {
    let mut s = Sampler::new(1);
    for ms in supports() {
        let q = s.real_field(&ms, 0.0, 1.0);
        let p = s.real_field(&ms, 0.0, 1.0);
        let fg = phi2_inverse(&FieldPair::new(q.clone(), p.clone()).unwrap());
        assert!(fg.conjugate_defect() < 1e-15);
        let back = phi2(&fg);
        assert!(rel(&back, &FieldPair::new(q.clone(), p).unwrap()) < 1e-15);
        // f = g gives p = 0
        let qp = phi2(&FieldPair::new(q.clone(), q).unwrap());
        assert_eq!(qp.second.max_abs(), 0.0);
    }
}

#[test]
fn bilinear_examples() {
    let ms = ModeSet::line(&[1, 2]).unwrap();
    let (u, v, h) = (one_mode(&ms, &[1]), one_mode(&ms, &[-1]), one_mode(&ms, &[2]));
    assert_relative_eq!(at(&a12(&u, &v, &h), &[2]).re, -1.0 / 8.0, max_relative = 1e-15);
    assert_relative_eq!(at(&c12(&u, &v, &h), &[2]).re, 1.0 / 24.0, max_relative = 1e-15);
    // mass only on the sphere of k
    let h1 = one_mode(&ms, &[1]);
    assert_eq!(a12(&u, &v, &h1).max_abs(), 0.0);
}

#[test]
fn bilinear_maps_match_brute_force() {
    let mut s = Sampler::new(2);
    for ms in supports() {
        let (u, v, h) = (s.complex_field(&ms, 0.0, 1.0), s.complex_field(&ms, 0.0, 1.0), s.complex_field(&ms, 0.0, 1.0));
        let d = &a12(&u, &v, &h) - &brute_bilinear(a12_kernel, &u, &v, &h);
        assert!(d.max_abs() < 1e-14);
        let d = &c12(&u, &v, &h) - &brute_bilinear(c12_kernel, &u, &v, &h);
        assert!(d.max_abs() < 1e-14);
    }
}

#[test]
fn quadratic_map_first_row() {
    let mut s = Sampler::new(3);
    for ms in supports() {
        let y = s.conjugate_pair(&ms, 1.0, 0.4);
        let (w, z) = (&y.first, &y.second);
        let expected = &brute_bilinear(a12_kernel, w, w, z) + &brute_bilinear(c12_kernel, z, z, z);
        assert!((&m_self(&y).first - &expected).max_abs() < 1e-14);
    }
}

#[test]
fn forward_maps_are_identity_at_zero() {
    for ms in supports() {
        let zero = FieldPair::zeros(&ms);
        for out in [phi3(&zero), phi3_inverse(&zero), phi4(&zero), phi5(&zero)] {
            assert_eq!(out.max_abs(), 0.0);
        }
        assert_eq!(phi4_inverse(&zero, 1.0).unwrap().max_abs(), 0.0);
        assert_eq!(phi5_inverse(&zero, 1.0, 0.05).unwrap().max_abs(), 0.0);
        let h = Sampler::new(5).conjugate_pair(&ms, 0.0, 1.0);
        assert!(rel(&phi4_differential_apply(&zero, &h), &h) == 0.0);
        assert!(rel(&phi5_differential_apply(&zero, &h), &h) == 0.0);
    }
}

#[test]
fn differentials_match_finite_differences() {
    let mut s = Sampler::new(6);
    let eps = 1e-6;
    for ms in supports() {
        let y = s.conjugate_pair(&ms, 1.0, 0.3);
        let h = s.conjugate_pair(&ms, 1.0, 0.3);
        let fd = |f: fn(&FieldPair) -> FieldPair| (&f(&y.axpy(eps.into(), &h)) - &f(&y)).scale_re(1.0 / eps);
        assert!(rel(&fd(phi4), &phi4_differential_apply(&y, &h)) < 1e-5);
        assert!(rel(&fd(phi5), &phi5_differential_apply(&y, &h)) < 1e-5);
    }
}

#[test]
fn real_structure_is_preserved() {
    let mut s = Sampler::new(7);
    for ms in supports() {
        let y = s.conjugate_pair(&ms, 1.0, 0.03);
        let h = s.conjugate_pair(&ms, 1.0, 1.0);
        for out in [phi3(&y), phi3_inverse(&y), phi4(&y), phi5(&y), k_apply(&y, &h), quartic_k_apply(&y, &h)] {
            assert!(out.conjugate_defect() <= 1e-16 * out.max_abs().max(1.0) * 4.0);
        }
    }
}

#[test]
fn inverse_balls_are_enforced() {
    let ms = ModeSet::ball(1, 3.0).unwrap();
    let big = Sampler::new(8).conjugate_pair(&ms, 1.0, 0.3);
    assert!(matches!(phi4_inverse(&big, 1.0), Err(Error::OutsideBall(_))));
    assert!(matches!(phi5_inverse(&big, 1.0, 0.05), Err(Error::OutsideBall(_))));
}

#[test]
fn neumann_series() {
    let ms = ModeSet::ball(1, 3.0).unwrap();
    let rhs = Sampler::new(9).conjugate_pair(&ms, 0.0, 1.0);
    let margin = Margin { norm: 0.0, limit: 1.0 };
    let same = neumann_inverse_apply(|h| h.scale_re(0.0), &rhs, margin).unwrap();
    assert_eq!(rel(&same, &rhs), 0.0);
    let half = neumann_inverse_apply(|h| h.scale_re(0.5), &rhs, margin).unwrap();
    assert!(rel(&half, &rhs.scale_re(2.0 / 3.0)) < 1e-14);
    assert!(neumann_inverse_apply(|h| h.scale_re(1.0), &rhs, margin).is_err());
    assert!(neumann_inverse_apply(|h| h.clone(), &rhs, Margin { norm: 2.0, limit: 1.0 }).is_err());
}

#[test]
fn full_chain_round_trip() {
    let mut s = Sampler::new(10);
    for ms in supports() {
        let reg = RegularityParams::for_dimension(ms.dim()).unwrap();
        let y = s.conjugate_pair(&ms, reg.m1, 0.02);
        let state = compose_full(&y, &reg).unwrap();
        assert!(state.position.reality_defect() < 1e-16);
        assert!(state.velocity.reality_defect() < 1e-16);
        let back = compose_full_inverse(&state, &reg).unwrap();
        assert!(rel(&back, &y) < 1e-12);
        let zero = compose_full(&FieldPair::zeros(&ms), &reg).unwrap();
        assert_eq!(zero.as_pair().max_abs(), 0.0);
    }
}

proptest! {
    #[test]
    fn m_is_linear_in_the_tangent(seed in any::<u64>(), a in -3.0f64..3.0) {
        let ms = ModeSet::ball(1, 4.0).unwrap();
        let mut s = Sampler::new(seed);
        let y = s.conjugate_pair(&ms, 1.0, 0.5);
        let (h, g) = (s.conjugate_pair(&ms, 1.0, 1.0), s.conjugate_pair(&ms, 1.0, 1.0));
        for op in [m_apply, k_apply, quartic_m_apply, quartic_k_apply] {
            let lhs = op(&y, &h.axpy(a.into(), &g));
            let rhs = op(&y, &h).axpy(a.into(), &op(&y, &g));
            prop_assert!((&lhs - &rhs).sobolev_norm(0.0) <= 1e-14 * (1.0 + rhs.sobolev_norm(0.0)));
        }
    }

    #[test]
    fn m_applied_to_the_state_is_the_quadratic_map(seed in any::<u64>()) {
        let ms = ModeSet::ball(2, 2.3).unwrap();
        let y = Sampler::new(seed).conjugate_pair(&ms, 1.0, 0.5);
        prop_assert!(rel(&m_apply(&y, &y), &m_self(&y)) < 1e-14);
        prop_assert!(rel(&quartic_m_apply(&y, &y), &quartic_m_self(&y)) < 1e-14);
    }

    #[test]
    fn phi3_round_trips(seed in any::<u64>(), amp in 0.0f64..0.5) {
        let ms = ModeSet::ball(1, 5.0).unwrap();
        let y = Sampler::new(seed).conjugate_pair(&ms, 1.0, amp);
        prop_assert!((&phi3_inverse(&phi3(&y)) - &y).sobolev_norm(0.0) <= 1e-14 * (1.0 + y.sobolev_norm(0.0)));
    }
}
