use kirchhoff_nf::coefficients::*;
use kirchhoff_nf::lattice::sphere_representative;
use kirchhoff_nf::sample::Sampler;
use kirchhoff_nf::ModeIndex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn m(c: &[i64]) -> ModeIndex {
    ModeIndex::new(c).unwrap()
}

fn q(n: i64, d: i64) -> f64 {
    n as f64 / d as f64
}

#[test]
fn worked_coefficients() {
    let one = m(&[1]);
    assert_eq!(nf5_coefficient(QuinticKind::A11, &one, &one, &one).unwrap(), q(1, 256));
    assert_eq!(nf5_coefficient(QuinticKind::F12, &one, &one, &one).unwrap(), q(-1, 32));
    assert!((nf5_coefficient(QuinticKind::B12, &one, &one, &m(&[2])).unwrap() - q(11, 64)).abs() < 1e-16);
    assert!((nf5_coefficient(QuinticKind::C12, &m(&[2]), &one, &m(&[3])).unwrap() - q(3, 32)).abs() < 1e-16);
    assert_eq!(nf5_coefficient(QuinticKind::C11, &m(&[3, 4]), &m(&[5, 0]), &m(&[1, 0])).unwrap(), 0.0);
    assert!(nf5_coefficient(QuinticKind::A11, &one, &m(&[1, 0]), &one).is_err());
}

#[test]
fn coefficients_depend_only_on_radii() {
    for kind in QuinticKind::ALL {
        let a = nf5_coefficient(kind, &m(&[3, 4]), &m(&[1, 1]), &m(&[2, 1])).unwrap();
        let b = nf5_coefficient(kind, &m(&[0, -5]), &m(&[-1, 1]), &m(&[1, -2])).unwrap();
        assert_eq!(a, b, "{kind}");
    }
}

#[test]
fn exact_and_float_agree_on_perfect_squares() {
    for kind in QuinticKind::ALL {
        for j in 1..7i64 {
            for l in 1..7i64 {
                for k in 1..13i64 {
                    let e: BigRational = nf5_coefficient_radii(kind, j * j, l * l, k * k).unwrap();
                    let f: f64 = nf5_coefficient_radii(kind, j * j, l * l, k * k).unwrap();
                    let e = e.to_f64().unwrap();
                    assert!((e - f).abs() <= 1e-14 * e.abs().max(1e-3), "{kind} {j} {l} {k}");
                }
            }
        }
    }
    // irrational radii have no exact value
    assert!(nf5_coefficient_radii::<BigRational>(QuinticKind::A11, 2, 1, 1).is_none());
}

#[test]
fn a11_bound_in_one_dimension() {
    for j in 1..=20 {
        for l in 1..=20 {
            for k in 1..=20 {
                let r = coefficient_bound_check(QuinticKind::A11, &m(&[j]), &m(&[l]), &m(&[k])).unwrap();
                assert!(r.ratio <= 1.0, "{j} {l} {k}: {}", r.ratio);
            }
        }
    }
}

#[test]
fn f12_never_exceeds_its_numerator() {
    for j in 1..=15 {
        for l in 1..=15 {
            for k in 1..=15 {
                let (jr, lr) = (j as f64, l as f64);
                let v = nf5_coefficient(QuinticKind::F12, &m(&[j]), &m(&[l]), &m(&[k])).unwrap();
                assert!(v.abs() <= 3.0 / 64.0 * jr * lr * (jr + lr));
            }
        }
    }
}

#[test]
fn d12_sampled_in_two_dimensions() {
    let mut s = Sampler::new(12);
    let mut pick = || loop {
        let n = s.uniform(1.0, 900.0) as i64;
        if let Some(p) = sphere_representative(2, n) {
            return p;
        }
    };
    for _ in 0..10_000 {
        let (j, l, k) = (pick(), pick(), pick());
        let r = coefficient_bound_check(QuinticKind::D12, &j, &l, &k).unwrap();
        assert!(r.ok, "{j:?} {l:?} {k:?} {}", r.ratio);
    }
}

#[test]
fn resonant_triple_report() {
    let r = divisor_report(&m(&[2]), &m(&[1]), &m(&[3]));
    assert!(r.resonant());
    assert_eq!(r.divisors[3], 0.0);
    assert!(r.ratio_diff.is_none());
    assert_eq!(r.p, BigInt::from(0));
}

#[test]
fn p_is_the_product_of_the_divisors() {
    for (k2, j2, l2) in [(4i64, 5, 18), (2, 3, 7), (10, 1, 13), (50, 2, 29), (1, 1, 1)] {
        let p = exact_p(k2, j2, l2).to_f64().unwrap();
        let (k, j, l) = ((k2 as f64).sqrt(), (j2 as f64).sqrt(), (l2 as f64).sqrt());
        let prod = (k + j + l) * (k + j - l) * (k - j + l) * (k - j - l);
        assert!((p - prod).abs() <= 1e-9 * p.abs().max(1.0), "{k2} {j2} {l2}");
    }
}

#[test]
fn sharp_triples_and_witnesses() {
    let t = sharpness_triples(4).unwrap();
    assert_eq!(t[0].n, 4);
    assert_eq!(t[0].p, BigInt::from(1));
    assert_eq!(t[1].n, 40);
    assert_eq!(t[1].witnesses, [(6, 2), (5, 4), (9, 9)]);
    assert_eq!(t[2].n, 3280);
    for w in &t {
        let vals = [w.n, w.n + 1, 4 * w.n + 2];
        for ((a, b), v) in w.witnesses.iter().zip(vals) {
            assert_eq!(a * a + b * b, v);
        }
    }
    // the smallest divisor is about 1/(8 n^(3/2))
    let n = t[1].n as f64;
    let d = (4.0 * n + 2.0).sqrt() - n.sqrt() - (n + 1.0).sqrt();
    assert!(d.abs() < 1.0 / (4.0 * n.powf(1.5)));
    assert!(sharpness_triples(0).is_err());
}

#[test]
fn perturbed_table_shifts_only_its_family() {
    let t = CoefficientTable::perturbed(QuinticKind::B12, 1, 1000);
    assert!(!t.is_standard());
    let base: f64 = nf5_coefficient_radii(QuinticKind::B12, 1, 1, 4).unwrap();
    let v: f64 = t.value(QuinticKind::B12, 1, 1, 4).unwrap();
    assert!((v - base - 1e-3).abs() < 1e-15);
    assert_eq!("d12".parse::<QuinticKind>().unwrap(), QuinticKind::D12);
    assert!("x99".parse::<QuinticKind>().is_err());
}
