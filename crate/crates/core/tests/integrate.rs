use kirchhoff_nf::functional::{h3, h_physical, RegularityParams};
use kirchhoff_nf::integrate::*;
use kirchhoff_nf::sample::Sampler;
use kirchhoff_nf::{Error, FieldPair, ModeSet, RealPairState};
use num_complex::Complex64;

fn exact_linear(y0: &FieldPair, t: f64) -> FieldPair {
    let rot = |f: &kirchhoff_nf::SpectralField, sign: f64| {
        let ms = f.modes().clone();
        kirchhoff_nf::SpectralField::from_fn(&ms, |i, _| {
            f.coeffs()[i] * Complex64::from_polar(1.0, -sign * ms.radius(i) * t)
        })
    };
    FieldPair::new(rot(&y0.first, 1.0), rot(&y0.second, -1.0)).unwrap()
}

#[test]
fn linear_flow_rotates_each_mode() {
    let ms = ModeSet::ball(1, 3.0).unwrap();
    let reg = RegularityParams::for_dimension(1).unwrap();
    let y0 = Sampler::new(51).conjugate_pair(&ms, 0.0, 1.0);
    let flow = PairFlow::new(System::Linear, &ms, reg).unwrap();
    let err = |dt: f64| {
        let steps = (2.0 / dt).round() as usize;
        let end = integrate(&flow, y0.clone(), dt, steps, |_, _, _| Ok(())).unwrap();
        (&end - &exact_linear(&y0, 2.0)).sobolev_norm(0.0)
    };
    let (e1, e2) = (err(0.02), err(0.01));
    assert!(e1 < 1e-6);
    let order = (e1 / e2).log2();
    assert!((order - 4.0).abs() < 0.2, "order {order}");
}

#[test]
fn halving_the_step_gains_sixteen() {
    let ms = ModeSet::spheres(1, &[1, 4]).unwrap();
    let reg = RegularityParams::for_dimension(1).unwrap();
    let y0 = Sampler::new(52).conjugate_pair(&ms, 1.0, 0.5);
    let flow = PairFlow::new(System::EtaPsi, &ms, reg).unwrap();
    let run = |dt: f64| integrate(&flow, y0.clone(), dt, (1.0 / dt).round() as usize, |_, _, _| Ok(())).unwrap();
    let reference = run(0.1 / 8.0);
    let e = |dt| (&run(dt) - &reference).sobolev_norm(0.0);
    let ratio = e(0.1) / e(0.05);
    assert!((10.0..22.0).contains(&ratio), "{ratio}");
}

#[test]
fn physical_energy_is_conserved() {
    let ms = ModeSet::ball(1, 3.0).unwrap();
    let mut s = Sampler::new(53);
    let x0 = RealPairState::new(s.real_field(&ms, 1.0, 1e-2), s.real_field(&ms, 0.0, 1e-2)).unwrap();
    let h0 = h_physical(&x0.position, &x0.velocity);
    integrate(&PhysicalFlow::new(&ms), x0, 1e-3, 10_000, |_, _, x| {
        let h = h_physical(&x.position, &x.velocity);
        assert!((h - h0).abs() <= 1e-10 * h0);
        assert!(x.position.reality_defect() <= 1e-13);
        Ok(())
    })
    .unwrap();
}

#[test]
fn eta_psi_energy_is_conserved() {
    let ms = ModeSet::ball(2, 2.0).unwrap();
    let reg = RegularityParams::for_dimension(2).unwrap();
    let y0 = Sampler::new(54).conjugate_pair(&ms, reg.m1, 0.05);
    let h0 = h3(&y0);
    integrate(&PairFlow::new(System::EtaPsi, &ms, reg).unwrap(), y0, 1e-3, 2000, |_, _, y| {
        assert!((h3(y) - h0).abs() <= 1e-10 * h0.abs());
        Ok(())
    })
    .unwrap();
}

#[test]
fn zero_data_stays_zero() {
    let ms = ModeSet::ball(1, 2.0).unwrap();
    let reg = RegularityParams::for_dimension(1).unwrap();
    for system in [System::Fg, System::EtaPsi, System::Normalized, System::Linear] {
        let end = integrate(&PairFlow::new(system, &ms, reg).unwrap(), FieldPair::zeros(&ms), 0.1, 10, |_, _, _| Ok(()))
            .unwrap();
        assert_eq!(end.max_abs(), 0.0, "{system}");
    }
}

#[test]
fn leaving_the_ball_reports_the_step() {
    let ms = ModeSet::spheres(1, &[1, 4]).unwrap();
    let reg = RegularityParams::for_dimension(1).unwrap();
    let y0 = Sampler::new(55).conjugate_pair(&ms, 1.0, 0.2);
    let flow = PairFlow::new(System::Normalized, &ms, reg).unwrap();
    match integrate(&flow, y0, 1e-3, 10, |_, _, _| Ok(())) {
        Err(Error::AtStep { step, source }) => {
            assert_eq!(step, 1);
            assert!(matches!(*source, Error::OutsideBall(_)));
        }
        other => panic!("expected a step error, got {other:?}"),
    }
}

#[test]
fn bad_arguments() {
    let ms = ModeSet::ball(1, 2.0).unwrap();
    let reg = RegularityParams::for_dimension(1).unwrap();
    assert!(PairFlow::new(System::Physical, &ms, reg).is_err());
    assert!(PairFlow::new(System::Shell, &ms, reg).is_err());
    let flow = PairFlow::new(System::Linear, &ms, reg).unwrap();
    assert!(integrate(&flow, FieldPair::zeros(&ms), -1.0, 1, |_, _, _| Ok(())).is_err());
    let other = FieldPair::zeros(&ModeSet::ball(1, 3.0).unwrap());
    assert!(matches!(
        integrate(&flow, other, 0.1, 1, |_, _, _| Ok(())),
        Err(Error::AtStep { source, .. }) if matches!(*source, Error::SupportMismatch(_))
    ));
    for name in ["physical", "fg", "etapsi", "normalized", "shell", "linear"] {
        assert_eq!(name.parse::<System>().unwrap().name(), name);
    }
    assert!("nonsense".parse::<System>().is_err());
}
