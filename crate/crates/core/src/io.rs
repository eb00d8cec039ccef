//! Plain-text field tables.
//!
//! ```text
//! dimension 2 radius 1.4142135623730951
//! -1 -1 0.25 0
//! 1 1 0.25 -0
//! ```
//!
//! The header gives the dimension and the largest radius of the support;
//! every following line holds the mode components, then the real and
//! imaginary parts. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldPair, SpectralField};
use crate::fields::FieldDecomposition;
use crate::lattice::ModeIndex;
use crate::modes::ModeSet;

/// Shortest text that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_field(field: &SpectralField) -> String {
    let ms = field.modes();
    let mut s = format!("dimension {} radius {}\n", ms.dim(), fmt_f64(ms.max_radius()));
    for (m, c) in ms.modes().iter().zip(field.coeffs()) {
        let _ = writeln!(s, "{m} {} {}", fmt_f64(c.re), fmt_f64(c.im));
    }
    s
}

/// Parses a table. Modes listed without their negatives get a zero
/// coefficient at the negative so the support stays symmetric.
pub fn read_field(text: &str) -> Result<SpectralField> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let (hn, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 4 || h[0] != "dimension" || h[2] != "radius" {
        return Err(Error::Parse { line: hn + 1, msg: "expected `dimension <d> radius <r>`".into() });
    }
    let dim: usize = h[1].parse().map_err(|_| Error::Parse { line: hn + 1, msg: "bad dimension".into() })?;
    let radius: f64 = h[3].parse().map_err(|_| Error::Parse { line: hn + 1, msg: "bad radius".into() })?;
    let mut entries = Vec::new();
    for (n, line) in lines {
        let err = |msg: String| Error::Parse { line: n + 1, msg };
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != dim + 2 {
            return Err(err(format!("expected {} columns, found {}", dim + 2, parts.len())));
        }
        let comps: Vec<i64> =
            parts[..dim].iter().map(|p| p.parse()).collect::<std::result::Result<_, _>>().map_err(|_| err("bad mode".into()))?;
        let m = ModeIndex::new(&comps).map_err(|e| err(e.to_string()))?;
        if m.radius() > radius + 1e-9 {
            return Err(err(format!("mode {m} lies outside radius {radius}")));
        }
        let re: f64 = parts[dim].parse().map_err(|_| err("bad real part".into()))?;
        let im: f64 = parts[dim + 1].parse().map_err(|_| err("bad imaginary part".into()))?;
        entries.push((m, Complex64::new(re, im)));
    }
    if entries.is_empty() {
        return Err(Error::Parse { line: hn + 1, msg: "no coefficients".into() });
    }
    let ms = ModeSet::from_modes(dim, entries.iter().flat_map(|(m, _)| [*m, m.neg()]))?;
    let mut f = SpectralField::zeros(&ms);
    for (m, c) in entries {
        f.set(&m, c)?;
    }
    Ok(f)
}

/// Both components of a pair, each under a `# component` label.
pub fn write_pair(label: &str, pair: &FieldPair) -> String {
    format!(
        "# {label} component 1\n{}# {label} component 2\n{}",
        write_field(&pair.first),
        write_field(&pair.second)
    )
}

/// Every part of a decomposition as labelled tables, then the scalar
/// phase factor when present.
pub fn write_decomposition(d: &FieldDecomposition) -> String {
    let mut s = String::new();
    for (part, pair) in d.parts() {
        s.push_str(&write_pair(part.name(), pair));
    }
    if let Some(p) = d.scalar_p {
        let _ = writeln!(s, "# scalarP {}", fmt_f64(p));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let ms = ModeSet::ball(2, 2.0).unwrap();
        let f = SpectralField::from_fn(&ms, |i, _| Complex64::new(1.0 / (i as f64 + 3.0), -0.1 * i as f64));
        let back = read_field(&write_field(&f)).unwrap();
        assert_eq!(back.coeffs(), f.coeffs());
        assert_eq!(**back.modes(), *ms);
    }

    #[test]
    fn missing_negatives_are_filled() {
        let f = read_field("dimension 1 radius 2\n2 1 0\n").unwrap();
        assert_eq!(f.modes().len(), 2);
        assert_eq!(f.get(&ModeIndex::new(&[-2]).unwrap()), Some(Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn rejects_modes_outside_radius() {
        assert!(read_field("dimension 1 radius 1\n2 1 0\n").is_err());
        assert!(read_field("dimension 1\n").is_err());
    }
}
