use num_complex::Complex64;

use crate::error::Result;
use crate::jet::Jet;
use crate::profiles::{Grid, Interval, SampledField, ScalarProfile};

/// A complex-valued profile as a pair of real ones.
#[derive(Clone, Debug)]
pub struct ComplexProfile {
    pub re: ScalarProfile,
    pub im: ScalarProfile,
}

impl ComplexProfile {
    pub fn new(re: ScalarProfile, im: ScalarProfile) -> Self {
        ComplexProfile { re, im }
    }

    pub fn real(re: ScalarProfile) -> Self {
        let im = ScalarProfile::constant(*re.domain(), 0.0);
        ComplexProfile { re, im }
    }

    /// `i p`.
    pub fn imaginary(im: ScalarProfile) -> Self {
        let re = ScalarProfile::constant(*im.domain(), 0.0);
        ComplexProfile { re, im }
    }

    pub fn zero(domain: Interval) -> Self {
        Self::real(ScalarProfile::constant(domain, 0.0))
    }

    pub fn domain(&self) -> Interval {
        self.re.domain().intersect(self.im.domain()).unwrap_or(*self.re.domain())
    }

    pub fn order(&self) -> usize {
        self.re.order().min(self.im.order())
    }

    pub(crate) fn apply(&self, x: &Jet) -> (Jet, Jet) {
        (self.re.apply(x), self.im.apply(x))
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        Ok(Complex64::new(self.re.eval(x)?, self.im.eval(x)?))
    }

    pub fn sample(&self, grid: &Grid) -> Result<SampledField<Complex64>> {
        grid.sample(|x| self.eval(x))
    }
}

/// Upper and lower components with their energy.
#[derive(Clone, Debug)]
pub struct Spinor {
    pub psi_plus: ComplexProfile,
    pub psi_minus: ComplexProfile,
    pub e: f64,
}

impl Spinor {
    pub fn new(psi_plus: ComplexProfile, psi_minus: ComplexProfile, e: f64) -> Self {
        Spinor { psi_plus, psi_minus, e }
    }

    pub fn sample_plus(&self, grid: &Grid) -> Result<SampledField<Complex64>> {
        self.psi_plus.sample(grid)
    }

    pub fn sample_minus(&self, grid: &Grid) -> Result<SampledField<Complex64>> {
        self.psi_minus.sample(grid)
    }

    /// Trapezoidal `int (|psi+|^2 + |psi-|^2) dx` over the grid nodes.
    pub fn l2_norm_squared(&self, grid: &Grid) -> Result<f64> {
        let p = self.sample_plus(grid)?;
        let m = self.sample_minus(grid)?;
        let dens: Vec<f64> = p.values().iter().zip(m.values()).map(|(a, b)| a.norm_sqr() + b.norm_sqr()).collect();
        let h = grid.step();
        let inner: f64 = dens[1..dens.len() - 1].iter().sum();
        Ok(h * (inner + 0.5 * (dens[0] + dens[dens.len() - 1])))
    }
}
