//! Construction and numerical verification of the exactly solvable
//! position-dependent-mass Dirac models generated by the so(2,1) potential
//! algebra with a local Fermi velocity.
//!
//! Units are dimensionless throughout (`hbar = 2 mu_0 = 1`).
//!
//! * [`profiles`]: scalar fields, exact derivatives through [`jet::Jet`],
//!   quadrature and grids.
//! * [`algebra`]: generator families, point canonical map, ladder and Casimir
//!   operators, ground states.
//! * [`potentials`]: von Roos effective potential, the `V_s` family, Riccati
//!   link to the pseudoscalar potential and equation residuals.
//! * [`dirac`]: spinors, coupled/decoupled/reduced Dirac residuals, spectrum.
//! * [`spectral`]: finite-difference eigenvalue oracle in the PCT variable.
//! * [`model`]: complete model bundles and the built-in presets.

pub mod error;
pub mod jet;
pub mod profiles;
pub mod algebra;
pub mod potentials;
pub mod dirac;
pub mod residual;
pub mod spectral;
pub mod model;

pub use error::{Error, Result};
pub use jet::{Jet, JET_ORDER};
pub use profiles::{Grid, Interval, SampledField, ScalarProfile};
pub use model::{ModelBundle, ModelSpec};
pub use residual::Residual;
