//! Runs every acceptance criterion, prints one verdict line each and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::Duration;

use kirchhoff_nf::verify::{self, Suite, VerifyOptions};

struct Criterion {
    title: &'static str,
    suite: Suite,
    budget: Duration,
}

fn criteria() -> Vec<Criterion> {
    let c = |title, suite: Suite, secs| Criterion { title, suite, budget: Duration::from_secs(secs) };
    vec![
        c("1 cubic terms do not change Sobolev norms", verify::cubic_cancellation, 10),
        c("2 sextic energy rate vanishes at s = 1/2", verify::z6_vanishing, 10),
        c("3 homological equation holds exactly", verify::homological_equation, 60),
        c("4 normalised flow is conjugate to the (f, g) flow", verify::conjugacy, 120),
        c("5 inverse maps and their norm bounds", verify::inverse_maps, 30),
        c("6 operator bounds and homogeneity", verify::operator_bounds, 60),
        c("7 small divisors", verify::small_divisors, 120),
        c("8 conserved quantities", verify::conservation, 120),
        c("9 shell equations close", verify::shell_closure, 10),
    ]
}

fn main() -> ExitCode {
    // `cargo test -- <filter>` forwards arguments; run everything unless the
    // filter names something else entirely.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return ExitCode::SUCCESS;
    }
    let opts = VerifyOptions::default();
    let mut failed = 0;
    for c in criteria() {
        let (ok, detail) = match (c.suite)(&opts) {
            Ok(report) => {
                for check in &report.checks {
                    println!("    {check}");
                }
                let in_time = report.elapsed <= c.budget;
                if !in_time {
                    println!("    runtime {:.1?} exceeds {:?}", report.elapsed, c.budget);
                }
                (report.passed() && in_time, format!("{:.2?}", report.elapsed))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        println!("{} criterion {} ({detail})", if ok { "PASS" } else { "FAIL" }, c.title);
        failed += (!ok) as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
