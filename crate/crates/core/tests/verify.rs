use kirchhoff_nf::coefficients::{CoefficientTable, QuinticKind};
use kirchhoff_nf::verify::*;

fn small(seed: u64) -> VerifyOptions {
    VerifyOptions { seed, samples: 12, bound_samples: 100, ..VerifyOptions::default() }
}

#[test]
fn verdicts_do_not_depend_on_the_seed() {
    for seed in [1, 2, 3] {
        for (name, suite) in SUITES {
            if name == "conjugacy" || name == "conservation" {
                continue;
            }
            let r = suite(&small(seed)).unwrap();
            assert!(r.passed(), "{name} seed {seed}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn corrupted_table_fails_the_homological_suite() {
    let opts = VerifyOptions { table: CoefficientTable::perturbed(QuinticKind::F11, 1, 1000), ..small(4) };
    let r = homological_equation(&opts).unwrap();
    assert!(!r.passed());
    assert!(r.failures().any(|c| c.name.contains("rational discrepancies")));
}

#[test]
fn checks_reject_nan() {
    assert!(!Check::new("x", f64::NAN, Limit::AtMost(1.0)).passed);
    assert!(!Check::new("x", f64::INFINITY, Limit::Finite).passed);
    assert!(Check::new("x", 4.0, Limit::Within(3.25, 4.75)).passed);
    assert!(!Check::new("x", 0.5, Limit::AtLeast(1.0)).passed);
}
