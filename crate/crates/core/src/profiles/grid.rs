use num_complex::Complex64;

use super::Interval;
use crate::error::{Error, Result};

/// Minimum number of nodes accepted by [`Grid::new`].
pub const MIN_GRID_NODES: usize = 16;

/// Default margin kept from open (singular) endpoints.
pub const DEFAULT_MARGIN: f64 = 1e-3;

/// Uniform nodes on an interval, pulled in by `margin` at open endpoints only.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    interval: Interval,
    margin: f64,
    nodes: Vec<f64>,
}

impl Grid {
    pub fn new(interval: Interval, n: usize, margin: f64) -> Result<Self> {
        if n < MIN_GRID_NODES {
            return Err(Error::InvalidParam(format!("grid needs n >= {MIN_GRID_NODES}, got {n}")));
        }
        if !(margin > 0.0) {
            return Err(Error::InvalidParam(format!("grid margin must be positive, got {margin}")));
        }
        if !interval.is_bounded() {
            return Err(Error::InvalidParam(format!("cannot grid the unbounded interval {interval}")));
        }
        let lo = if interval.open_lo { interval.lo + margin } else { interval.lo };
        let hi = if interval.open_hi { interval.hi - margin } else { interval.hi };
        if lo >= hi {
            return Err(Error::InvalidParam(format!("margin {margin} leaves no room inside {interval}")));
        }
        let step = (hi - lo) / (n - 1) as f64;
        let nodes = (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + i as f64 * step })
            .collect();
        Ok(Grid { interval, margin, nodes })
    }

    /// `n` uniform nodes on the closed span `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64, n: usize) -> Result<Self> {
        Self::new(Interval::closed(lo, hi)?, n, DEFAULT_MARGIN)
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.nodes[1] - self.nodes[0]
    }

    pub fn first(&self) -> f64 {
        self.nodes[0]
    }

    pub fn last(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.first() + self.last())
    }

    /// Samples `f` at every node.
    pub fn sample<T>(&self, f: impl FnMut(f64) -> Result<T>) -> Result<SampledField<T>> {
        let values = self.nodes.iter().copied().map(f).collect::<Result<Vec<_>>>()?;
        Ok(SampledField { grid: self.clone(), values })
    }
}

/// Field magnitude used by residual norms.
pub trait Magnitude: Copy {
    fn magnitude(&self) -> f64;
}

impl Magnitude for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Magnitude for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Values attached to the nodes of a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField<T = f64> {
    grid: Grid,
    values: Vec<T>,
}

impl<T: Copy> SampledField<T> {
    pub fn new(grid: Grid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParam(format!(
                "field has {} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(SampledField { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, T)> + '_ {
        self.grid.nodes.iter().copied().zip(self.values.iter().copied())
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> SampledField<U> {
        SampledField { grid: self.grid.clone(), values: self.values.iter().map(|v| f(*v)).collect() }
    }
}

impl<T: Magnitude> SampledField<T> {
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.magnitude().is_finite())
    }
}
