use crate::error::Result;
use crate::profiles::{Grid, Magnitude, SampledField};

/// A residual field together with the size of the terms it balances, node by
/// node, so it can be judged against either a global or a local scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual<T = f64> {
    pub field: SampledField<T>,
    /// Largest magnitude among the terms of the equation at each node.
    pub scale: SampledField<f64>,
}

/// Floor for scale denominators of trivial (all-zero) problems.
pub const SCALE_FLOOR: f64 = 1e-30;

impl<T: Copy + Magnitude> Residual<T> {
    pub fn new(grid: &Grid, values: Vec<T>, scale: Vec<f64>) -> Result<Self> {
        Ok(Residual { field: SampledField::new(grid.clone(), values)?, scale: SampledField::new(grid.clone(), scale)? })
    }

    /// `max |r|`.
    pub fn sup(&self) -> f64 {
        self.field.sup_norm()
    }

    /// `max |r| / max(max scale, 1e-30)`.
    pub fn relative(&self) -> f64 {
        self.sup() / self.scale.sup_norm().max(SCALE_FLOOR)
    }

    /// `max_i |r_i| / max(scale_i, 1e-30)`: relative to the local size of the
    /// terms, for fields that grow without bound towards a boundary.
    pub fn local_relative(&self) -> f64 {
        self.field
            .values()
            .iter()
            .zip(self.scale.values())
            .map(|(r, s)| r.magnitude() / s.max(SCALE_FLOOR))
            .fold(0.0, f64::max)
    }

    /// `max_i |r_i| / max(1, scale_i)`: absolute for O(1) terms, relative for
    /// large ones.
    pub fn mixed(&self) -> f64 {
        self.field.values().iter().zip(self.scale.values()).map(|(r, s)| r.magnitude() / s.max(1.0)).fold(0.0, f64::max)
    }
}
