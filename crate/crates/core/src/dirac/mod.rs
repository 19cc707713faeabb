//! The `(1+1)`-dimensional Dirac problem with position-dependent mass and
//! Fermi velocity: spinors, the coupled, decoupled and reduced equations,
//! the constancy condition `m v_f^2 = A` and the algebraic spectrum.
//!
//! Spinor components are complex so `-i sqrt(v_f) d sqrt(v_f)` acts
//! literally; a real upper component yields a purely imaginary lower one.

mod equations;
mod model;
mod spinor;

pub use equations::{
    build_eigen_spinor, coupled_residuals, decoupled_residual, hamiltonian_residual, lower_from_upper,
    reduced_residual, EigenSpinor,
};
pub use model::{fermi_from_mass, mustafa_mass, spectrum, DiracModel, SpectrumEntry};
pub use spinor::{ComplexProfile, Spinor};
