use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kirchhoff-nf"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn read(path: &Path) -> Self {
        let mut r = csv::Reader::from_path(path).unwrap();
        let header = r.headers().unwrap().iter().map(String::from).collect();
        let rows = r.records().map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect()).collect();
        Self { header, rows }
    }

    fn column(&self, name: &str) -> Vec<f64> {
        let i = self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i]).collect()
    }
}

fn spread(xs: &[f64]) -> f64 {
    xs.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b)) - xs.iter().fold(f64::INFINITY, |a, &b| a.min(b))
}

#[test]
fn simulate_is_bitwise_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "a.cfg", "dimension = 2\nradius = 2\nsystem = fg\nsteps = 200\nsample_every = 50\nseed = 11\n");
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for out in [&a, &b] {
        assert!(run(&["simulate", s(&cfg), "--out", s(out)]).status.success());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
    let t = Table::read(&a);
    assert_eq!(
        t.header,
        ["t", "norm_0.5", "norm_1", "H3", "z6_0.5", "z6_1", "z_ge8_estimate"].map(String::from).to_vec()
    );
    assert_eq!(t.rows.len(), 5);
}

#[test]
fn floats_carry_seventeen_significant_digits() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "a.cfg", "steps = 1\nseed = 2\n");
    let out = run(&["simulate", s(&cfg)]);
    let text = String::from_utf8(out.stdout).unwrap();
    let field = text.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    let mantissa = field.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{field}");
}

#[test]
fn zero_data_gives_zero_columns() {
    let dir = TempDir::new().unwrap();
    for system in ["physical", "fg", "etapsi", "normalized"] {
        let cfg = write_config(
            &dir,
            "z.cfg",
            &format!("system = {system}\nsteps = 20\ns_list = 0 0.5 1\ninit_mode = 1\ninit_re = 0\n"),
        );
        let out = dir.path().join("z.csv");
        assert!(run(&["simulate", s(&cfg), "--out", s(&out)]).status.success());
        let t = Table::read(&out);
        assert_eq!(t.rows.len(), 21);
        for row in &t.rows {
            assert!(row[1..].iter().all(|&x| x == 0.0), "{system}: {row:?}");
        }
    }
}

#[test]
fn z6_at_half_vanishes_along_trajectories() {
    let dir = TempDir::new().unwrap();
    for (dim, radius) in [(1, 4), (2, 3)] {
        let cfg = write_config(
            &dir,
            "z.cfg",
            &format!("dimension = {dim}\nradius = {radius}\nsystem = normalized\nsteps = 300\nsample_every = 10\namplitude = 0.02\nseed = 5\n"),
        );
        let out = dir.path().join("z.csv");
        assert!(run(&["simulate", s(&cfg), "--out", s(&out)]).status.success());
        let t = Table::read(&out);
        assert!(t.column("z6_0.5").iter().all(|z| z.abs() <= 1e-13));
        assert!(t.column("z6_1").iter().any(|z| z.abs() > 1e-20), "z6 at s = 1 should not vanish identically");
        assert!(t.column("z_ge8_estimate").iter().all(|z| z.is_finite()));
    }
}

#[test]
fn physical_energy_drift_is_small() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "p.cfg", "system = physical\nradius = 3\nsteps = 10000\nsample_every = 1000\nseed = 8\n");
    let out = dir.path().join("p.csv");
    assert!(run(&["simulate", s(&cfg), "--out", s(&out)]).status.success());
    let h = Table::read(&out).column("H_physical");
    assert!(h[0] > 0.0);
    assert!(spread(&h) <= 1e-10, "drift {:e}", spread(&h));
}

#[test]
fn shell_csv_layout_and_conserved_sum() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "s.cfg", "dimension = 2\nradius = 2\nsystem = shell\nsteps = 1000\nsample_every = 100\namplitude = 0.5\n");
    let out = dir.path().join("s.csv");
    assert!(run(&["shell", s(&cfg), "--out", s(&out)]).status.success());
    let t = Table::read(&out);
    // squared radii 1, 2, 4 in the plane
    assert_eq!(t.header.len(), 1 + 3 * 3 + 2);
    assert_eq!(&t.header[1..4], ["S_1", "ReB_1", "ImB_1"]);
    let w = t.column("W_0.5");
    assert!(spread(&w) <= 1e-12 * w[0].max(1.0));
    let via_simulate = run(&["simulate", s(&cfg)]);
    assert_eq!(via_simulate.stdout, std::fs::read(&out).unwrap());
}

#[test]
fn conjugacy_reports_and_checks_precondition() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.cfg", "radius = 2\nsteps = 2000\nsample_every = 500\nseed = 4\n");
    let out = dir.path().join("c.csv");
    let o = run(&["conjugacy", s(&cfg), "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
    let d = Table::read(&out).column("discrepancy");
    assert_eq!(d.len(), 5);
    assert!(d.iter().all(|&x| x <= 1e-10));

    let zero = write_config(&dir, "z.cfg", "steps = 100\namplitude = 0\n");
    let o = run(&["conjugacy", s(&zero), "--out", s(&out)]);
    assert!(o.status.success());
    assert!(Table::read(&out).column("discrepancy").iter().all(|&x| x == 0.0));

    let big = write_config(&dir, "b.cfg", "steps = 10\namplitude = 0.1\n");
    assert_eq!(run(&["conjugacy", s(&big)]).status.code(), Some(2));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    for text in ["dt = 0", "steps = 0", "dt = 1\nsteps = 2000000", "frobnicate = 1", "system = linear", "init_mode = 5\ninit_re = 1"] {
        let cfg = write_config(&dir, "bad.cfg", text);
        let o = run(&["simulate", s(&cfg)]);
        assert_eq!(o.status.code(), Some(2), "{text}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(run(&["simulate", "/nonexistent/run.cfg"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--corrupt-coefficient", "Z99"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn divisor_scan_meets_the_bounds() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("d.csv");
    assert!(run(&["divisor-scan", "--dimension", "2", "--radius", "10", "--out", s(&out)]).status.success());
    let mut r = csv::Reader::from_path(&out).unwrap();
    let mut n = 0;
    for rec in r.records() {
        let rec = rec.unwrap();
        assert_eq!(&rec[10], "true");
        assert_eq!(&rec[11], "true");
        n += 1;
    }
    // 43 sums of two squares in [1, 100]
    assert_eq!(n, 43usize.pow(3));
}

#[test]
fn coeff_dump_lists_exact_values() {
    let o = run(&["coeff-dump", "--max-norm-sq", "4", "--kind", "a11"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("kind,j2,l2,k2,value,exact\n"));
    assert!(text.contains("A11,1,1,1,3.9062500000000000e-3,1/256\n"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("A11,")));
}

#[test]
fn oracle_flags_corrupted_tables() {
    assert!(run(&["oracle", "--modes", "1,2"]).status.success());
    assert_eq!(run(&["oracle", "--modes", "1,2", "--corrupt-coefficient", "C12"]).status.code(), Some(1));
    let dump = run(&["oracle", "--modes", "1", "--dump"]);
    assert!(String::from_utf8(dump.stdout).unwrap().lines().count() > 1);
}

fn verdicts(stdout: &[u8]) -> Vec<String> {
    String::from_utf8_lossy(stdout)
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .map(|l| l.split(" (").next().unwrap().to_string())
        .collect()
}

#[test]
fn verify_default_passes_and_seeds_agree() {
    let o = run(&["verify"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let base = verdicts(&o.stdout);
    assert_eq!(base.len(), 10);
    assert!(base.iter().all(|v| v.starts_with("PASS")));

    let small = ["--samples", "12", "--bound-samples", "100"];
    for seed in ["1", "2"] {
        let o = run(&[&["verify", "--seed", seed][..], &small].concat());
        assert_eq!(verdicts(&o.stdout), base, "seed {seed}");
    }
}

#[test]
fn verify_fails_on_a_corrupted_table() {
    let o = run(&["verify", "--suite", "homological", "--corrupt-coefficient", "F11"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL homological"));
    assert!(run(&["verify", "--suite", "homological"]).status.success());
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}
