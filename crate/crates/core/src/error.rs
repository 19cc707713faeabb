use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("x = {x} is outside the domain {domain}")]
    OutOfDomain { x: f64, domain: String },

    #[error("x = {x} is within {min_distance} of an open boundary; finite-difference stencil does not fit")]
    StepUnderflow { x: f64, min_distance: f64 },

    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("degenerate point canonical map: |u'({x})| = {slope:e} < 1e-12")]
    DegenerateMap { x: f64, slope: f64 },

    #[error("division by (near) zero at x = {x}: |G| = {value:e}")]
    DivisionByZero { x: f64, value: f64 },

    #[error("G({x}) = {value} is not positive; non-integer power k - 1/2 = {exponent} is undefined")]
    NonPositiveG { x: f64, value: f64, exponent: f64 },

    #[error("ordering parameters violate eta + beta + gamma = -1 (sum = {sum})")]
    OrderingViolation { sum: f64 },

    #[error("v_f^2 M deviates from 1 by {deviation:e} at x = {x}")]
    LinkViolation { x: f64, deviation: f64 },

    #[error("Riccati solution exceeded |W| = {bound:e} near x = {x}")]
    BlowUp { x: f64, bound: f64 },

    #[error("could not invert the point canonical map at u = {u}")]
    InversionFailure { u: f64 },

    #[error("eigenvalue iteration failed to converge: {0}")]
    ConvergenceFailure(String),

    #[error("denominator E + m v_f^2 = {value:e} is singular at x = {x}")]
    SingularDenominator { x: f64, value: f64 },

    #[error("energy is complex: A^2 = {a_squared} < (k - 1/2)^2 = {gap}")]
    ComplexEnergy { a_squared: f64, gap: f64 },

    #[error("profile carries only {available} analytic derivative orders, {required} required")]
    InsufficientOrder { available: usize, required: usize },
}

impl Error {
    /// Numerical (as opposed to input) failures: solver non-convergence and friends.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::BlowUp { .. }
                | Error::InversionFailure { .. }
                | Error::ConvergenceFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
