use approx::assert_relative_eq;
use kirchhoff_nf::fields::energy_rate_z6;
use kirchhoff_nf::integrate::{integrate, ShellFlow};
use kirchhoff_nf::sample::Sampler;
use kirchhoff_nf::shell::*;
use kirchhoff_nf::{ConjugatePairState, ModeIndex, ModeSet, SpectralField};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_mode(a: Complex64, b: Complex64) -> ConjugatePairState {
    let ms = ModeSet::line(&[1]).unwrap();
    let mut u = SpectralField::zeros(&ms);
    u.set(&ModeIndex::new(&[1]).unwrap(), a).unwrap();
    u.set(&ModeIndex::new(&[-1]).unwrap(), b).unwrap();
    ConjugatePairState::from_first(u)
}

#[test]
fn radii_sets() {
    assert_eq!(gamma_radii(1, 3.0).unwrap(), vec![1, 4, 9]);
    assert_eq!(gamma_radii(2, 3.0).unwrap(), vec![1, 2, 4, 5, 8, 9]);
    assert!(gamma_radii(2, 3.0).unwrap().contains(&5));
}

#[test]
fn projections_of_two_mode_states() {
    let a = 0.7;
    let p = project_to_shells(&two_mode(c(a, 0.0), c(a, 0.0)));
    assert_relative_eq!(p.s[0], 2.0 * a * a, max_relative = 1e-15);
    assert_relative_eq!(p.b[0].re, 2.0 * a * a, max_relative = 1e-15);
    let p = project_to_shells(&two_mode(c(a, 0.0), c(-a, 0.0)));
    assert_relative_eq!(p.b[0].re, -2.0 * a * a, max_relative = 1e-15);
    assert!(p.b[0].norm() <= p.s[0] + 1e-15);
}

#[test]
fn shell_sums_give_sobolev_norms() {
    let mut s = Sampler::new(41);
    let ms = ModeSet::ball(2, 4.0).unwrap();
    let pair = ConjugatePairState::from_first(s.complex_field(&ms, 1.0, 1.0));
    let spec = project_to_shells(&pair);
    for sv in [0.0, 0.5, 1.0] {
        assert_relative_eq!(spec.weighted_sum(sv), pair.as_pair().first.sobolev_norm(sv).powi(2), max_relative = 1e-14);
    }
    spec.validate().unwrap();
}

#[test]
fn single_shell_dynamics() {
    let spec = project_to_shells(&two_mode(c(0.6, 0.2), c(-0.3, 0.5)));
    let d = shell_rhs(&spec);
    assert_eq!(d.ds[0], 0.0);
    let (s1, b1) = (spec.s[0], spec.b[0]);
    let p = spec.phase_factor();
    let i = c(0.0, 1.0);
    let expected = -2.0 * i * (1.0 + p) * (1.0 + 0.25 * s1) * b1
        + i / 32.0 * b1.norm_sqr() * b1
        + 13.0 * i / 16.0 * s1 * s1 * b1;
    assert!((d.db[0] - expected).norm() < 1e-15 * expected.norm().max(1.0), "{} vs {expected}", d.db[0]);
}

#[test]
fn zero_spectrum_is_stationary() {
    let d = shell_rhs(&ShellSpectrum::zeros(vec![1, 4, 9]).unwrap());
    assert!(d.ds.iter().all(|x| *x == 0.0));
    assert!(d.db.iter().all(|x| x.norm() == 0.0));
}

#[test]
fn invalid_spectra_are_rejected() {
    assert!(ShellSpectrum::new(vec![1], vec![-1.0], vec![c(0.0, 0.0)]).is_err());
    assert!(ShellSpectrum::new(vec![1], vec![1.0], vec![c(2.0, 0.0)]).is_err());
    assert!(ShellSpectrum::new(vec![1, 4], vec![1.0], vec![c(0.0, 0.0)]).is_err());
}

#[test]
fn sextic_rate_vanishes_at_half_and_for_real_b() {
    let spec = ShellSpectrum::new(vec![1, 4, 9], vec![1.0, 0.5, 0.8], vec![c(0.3, 0.2), c(-0.1, 0.4), c(0.5, -0.5)]).unwrap();
    assert!(shell_z6(&spec, 0.5).abs() < 1e-13);
    assert!(shell_z6(&spec, 1.0).abs() > 1e-6);
    let real = ShellSpectrum::new(vec![1, 4, 9], vec![1.0, 0.5, 0.8], vec![c(0.3, 0.0), c(-0.1, 0.0), c(0.5, 0.0)]).unwrap();
    assert_eq!(shell_z6(&real, 1.0), 0.0);
}

#[test]
fn sextic_rate_on_a_realising_field() {
    for t in [0.1, 0.5, 1.0] {
        let spec = ShellSpectrum::new(vec![1, 4, 9], vec![t; 3], vec![c(0.0, t), c(t, 0.0), c(t, 0.0)]).unwrap();
        let pair = realize(&spec, 1).unwrap();
        let back = project_to_shells(&pair);
        for i in 0..3 {
            assert!((back.s[i] - spec.s[i]).abs() < 1e-15 && (back.b[i] - spec.b[i]).norm() < 1e-15);
        }
        let z = shell_z6(&spec, 1.0);
        let field = energy_rate_z6(pair.as_pair(), 1.0).unwrap();
        assert!(z.abs() > 0.0);
        assert!((z - field.closed_form).abs() <= 1e-13 * field.magnitude, "{z} {}", field.closed_form);
        assert!((z - field.pairing).abs() <= 1e-12 * field.magnitude);
    }
}

#[test]
fn realisation_in_two_dimensions() {
    let spec = ShellSpectrum::new(vec![1, 2, 5], vec![0.4, 0.3, 0.2], vec![c(0.1, 0.1), c(0.0, -0.3), c(0.2, 0.0)]).unwrap();
    let back = project_to_shells(&realize(&spec, 2).unwrap());
    for i in 0..3 {
        assert!((back.s[i] - spec.s[i]).abs() < 1e-15 && (back.b[i] - spec.b[i]).norm() < 1e-15);
    }
    // 3 is not a sum of two squares
    let bad = ShellSpectrum::new(vec![3], vec![0.1], vec![c(0.0, 0.0)]).unwrap();
    assert!(realize(&bad, 2).is_err());
}

#[test]
fn closure_on_one_sphere_is_trivial() {
    let pair = two_mode(c(0.6, 0.2), c(-0.3, 0.5));
    let r = shell_consistency(&pair, 0.5);
    assert_eq!(r.closed.ds, vec![0.0]);
    assert!(r.projected.ds[0].abs() < 1e-15);
}

#[test]
fn momentum_is_conserved_along_the_shell_flow() {
    let spec = ShellSpectrum::new(vec![1, 4, 9], vec![1.0, 0.5, 0.8], vec![c(0.3, 0.2), c(-0.1, 0.4), c(0.5, -0.5)]).unwrap();
    let m0 = spec.weighted_sum(0.5);
    let end = integrate(&ShellFlow, spec.clone(), 1e-2, 500, |_, _, x| {
        assert!((x.weighted_sum(0.5) - m0).abs() <= 1e-13 * m0);
        Ok(())
    })
    .unwrap();
    // S does move
    assert!((end.s[0] - spec.s[0]).abs() > 1e-6);
}

proptest! {
    #[test]
    fn closure_holds_for_random_line_states(seed in any::<u64>()) {
        let ms = ModeSet::spheres(1, &[1, 4, 9]).unwrap();
        let pair = ConjugatePairState::from_first(Sampler::new(seed).complex_field(&ms, 1.0, 1.0));
        let r = shell_consistency(&pair, 0.5);
        prop_assert!(r.ds_error <= 1e-11, "{}", r.ds_error);
        prop_assert!(r.db_error <= 1e-11, "{}", r.db_error);
    }
}
