//! Real scalar fields on an interval: evaluation, exact or numerical
//! derivatives, adaptive quadrature and grid sampling.

mod grid;
mod interval;
mod profile;
pub mod quadrature;
mod spline;

pub use grid::{Grid, Magnitude, SampledField, DEFAULT_MARGIN, MIN_GRID_NODES};
pub use interval::Interval;
pub use profile::{fd_step, ScalarProfile, INTEGRATION_TOL};
pub use spline::CubicSpline;
