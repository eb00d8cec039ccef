//! Normal-form toolkit for the Kirchhoff equation on the torus.
//!
//! States are truncated Fourier series on a finite mode set closed under
//! `k -> -k`. The nonlinearity only couples modes through sums over whole
//! spheres `|k| = const`, so every operator here preserves the support of
//! its input and a Galerkin truncation is exact.

pub mod coefficients;
pub mod conjugacy;
pub mod error;
pub mod field;
pub mod fields;
pub mod functional;
pub mod integrate;
pub mod io;
pub mod kernel;
pub mod lattice;
pub mod modes;
pub mod oracle;
pub mod sample;
pub mod shell;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ConjugatePairState, FieldPair, RealPairState, SpectralField};
pub use functional::RegularityParams;
pub use lattice::ModeIndex;
pub use modes::ModeSet;
