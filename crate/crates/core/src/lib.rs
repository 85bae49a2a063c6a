//! SU(2) coherent states over the degenerate eigenspaces of the commensurate
//! anisotropic two-dimensional harmonic oscillator, and the classical
//! Lissajous orbit ensembles they correspond to.
//!
//! Units are natural throughout (ħ = 1, mass = 1). The oscillator has
//! frequency `q·ω` along x (mode 1) and `p·ω` along y (mode 2).
//!
//! Module map:
//!
//! - [`oscillator`]: configuration, degenerate eigenspaces, energies, Bezout identity.
//! - [`su2`]: Schwinger generators on a subspace, SU(2) and Glauber coherent states.
//! - [`classical`]: Lissajous orbits, untwisting map, stereographic projection,
//!   orbit ensembles derived from coherent-state parameters.
//! - [`wavefield`]: Hermite functions and position-space densities on grids.
//! - [`localization`]: tube-mass localization metrics and scans.
//! - [`export`]: CSV writers for orbits, densities and localization reports.

pub mod classical;
pub mod error;
pub mod export;
pub mod localization;
pub mod oscillator;
pub mod su2;
pub mod wavefield;

pub use num_complex::Complex64;

pub use classical::{LissajousEnsemble, LissajousOrbit, PhasePoint};
pub use error::{Error, Result};
pub use localization::{EpsilonRule, TubeReport};
pub use oscillator::{BezoutSolution, OscillatorConfig, SubspaceBasis};
pub use su2::{CoherentSpec, StateBasis, StateVector, Su2Generators};
pub use wavefield::{DensityField, GridSpec};
