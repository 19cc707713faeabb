use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use super::quadrature::integrate_adaptive;
use super::spline::CubicSpline;
use super::{Grid, Interval, SampledField};
use crate::error::{Error, Result};
use crate::jet::{Jet, JET_ORDER};

/// Absolute tolerance used by [`ScalarProfile::integrate`].
pub const INTEGRATION_TOL: f64 = 1e-10;

type JetFn = dyn Fn(&Jet) -> Jet + Send + Sync;

#[derive(Clone)]
enum Rule {
    Analytic(Arc<JetFn>),
    Sampled(Arc<CubicSpline>),
}

/// A real function of one real variable on an [`Interval`].
///
/// Closed-form profiles are assembled from a fixed catalog (constants,
/// polynomials, hyperbolic and inverse hyperbolic functions, `exp`, roots,
/// `asin`, the gudermannian) and evaluate through [`Jet`]s, so their
/// derivatives up to [`ScalarProfile::order`] are exact. Sampled profiles
/// interpolate with a natural cubic spline and report order 0; their public
/// derivatives fall back to central differences.
#[derive(Clone)]
pub struct ScalarProfile {
    domain: Interval,
    rule: Rule,
    order: usize,
    label: Arc<str>,
}

impl fmt::Debug for ScalarProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarProfile")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("order", &self.order)
            .finish()
    }
}

impl ScalarProfile {
    /// Builds an analytic profile from a jet rule. `order` is the number of
    /// derivatives the rule propagates exactly.
    pub fn from_jet_fn(
        domain: Interval,
        label: impl Into<String>,
        order: usize,
        f: impl Fn(&Jet) -> Jet + Send + Sync + 'static,
    ) -> Self {
        ScalarProfile {
            domain,
            rule: Rule::Analytic(Arc::new(f)),
            order: order.min(JET_ORDER),
            label: label.into().into(),
        }
    }

    pub fn constant(domain: Interval, v: f64) -> Self {
        Self::from_jet_fn(domain, format!("{v}"), JET_ORDER, move |_| Jet::constant(v))
    }

    pub fn identity(domain: Interval) -> Self {
        Self::from_jet_fn(domain, "x", JET_ORDER, |x| *x)
    }

    /// `sum coeffs[i] x^i`.
    pub fn polynomial(domain: Interval, coeffs: &[f64]) -> Self {
        let c = coeffs.to_vec();
        let label = c
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| match i {
                0 => format!("{v}"),
                1 => format!("{v}*x"),
                _ => format!("{v}*x^{i}"),
            })
            .collect::<Vec<_>>()
            .join(" + ");
        let label = if label.is_empty() { "0".to_string() } else { label };
        Self::from_jet_fn(domain, label, JET_ORDER, move |x| {
            c.iter().rev().fold(Jet::constant(0.0), |acc, v| acc * *x + *v)
        })
    }

    /// Spline interpolant of sampled data; its domain is the sampled span.
    pub fn from_samples(field: &SampledField) -> Result<Self> {
        let spline = CubicSpline::new(field.grid().nodes().to_vec(), field.values().to_vec())?;
        let (lo, hi) = spline.span();
        Ok(ScalarProfile {
            domain: Interval::closed(lo, hi)?,
            rule: Rule::Sampled(Arc::new(spline)),
            order: 0,
            label: "sampled".into(),
        })
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    /// Number of derivative orders available analytically.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_analytic(&self) -> bool {
        matches!(self.rule, Rule::Analytic(_))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into().into();
        self
    }

    pub fn with_domain(mut self, domain: Interval) -> Self {
        self.domain = domain;
        self
    }

    /// Evaluates along an arbitrary input jet without a domain check.
    pub fn apply(&self, x: &Jet) -> Jet {
        match &self.rule {
            Rule::Analytic(f) => f(x),
            Rule::Sampled(s) => {
                let x0 = x.value();
                let [v, d1, d2, d3] = s.eval_all(x0);
                let taylor = [v, d1, d2 / 2.0, d3 / 6.0, 0.0, 0.0];
                Jet::compose_series(&taylor, &(*x - x0))
            }
        }
    }

    /// Taylor jet at `x` without a domain check.
    pub fn jet_unchecked(&self, x: f64) -> Jet {
        self.apply(&Jet::variable(x))
    }

    pub fn value_unchecked(&self, x: f64) -> f64 {
        match &self.rule {
            Rule::Analytic(f) => f(&Jet::variable(x)).value(),
            Rule::Sampled(s) => s.eval_all(x)[0],
        }
    }

    pub fn jet(&self, x: f64) -> Result<Jet> {
        self.domain.check(x)?;
        Ok(self.jet_unchecked(x))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.domain.check(x)?;
        Ok(self.value_unchecked(x))
    }

    /// First or second derivative at `x`: analytic when available, otherwise a
    /// central difference (see [`fd_step`]).
    pub fn derivative(&self, x: f64, order: usize) -> Result<f64> {
        if !(1..=2).contains(&order) {
            return Err(Error::InvalidParam(format!("derivative order must be 1 or 2, got {order}")));
        }
        self.domain.check(x)?;
        if order <= self.order {
            return Ok(self.jet_unchecked(x).derivative(order));
        }
        self.central_difference(x, order, fd_step(x, order))
    }

    /// Central difference with an explicit step.
    pub fn central_difference(&self, x: f64, order: usize, h: f64) -> Result<f64> {
        self.domain.check(x)?;
        let room = self.domain.distance_to_open_boundary(x);
        if room < 2.0 * h {
            return Err(Error::StepUnderflow { x, min_distance: 2.0 * h });
        }
        let f = |t| self.value_unchecked(t);
        match order {
            1 => Ok((f(x + h) - f(x - h)) / (2.0 * h)),
            2 => Ok((f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)),
            _ => Err(Error::InvalidParam(format!("derivative order must be 1 or 2, got {order}"))),
        }
    }

    /// Definite integral over `[a, b]` to absolute tolerance [`INTEGRATION_TOL`].
    pub fn integrate(&self, a: f64, b: f64) -> Result<f64> {
        self.integrate_with_tol(a, b, INTEGRATION_TOL)
    }

    pub fn integrate_with_tol(&self, a: f64, b: f64, tol: f64) -> Result<f64> {
        self.domain.check(a)?;
        self.domain.check(b)?;
        integrate_adaptive(|t| self.value_unchecked(t), a, b, tol)
    }

    /// Running integral sampled on `grid`, with value `y0` at `x0`.
    pub fn cumulative(&self, grid: &Grid, x0: f64, y0: f64) -> Result<SampledField> {
        if x0 < grid.first() || x0 > grid.last() {
            return Err(Error::OutOfDomain { x: x0, domain: format!("[{}, {}]", grid.first(), grid.last()) });
        }
        self.domain.check(x0)?;
        let nodes = grid.nodes();
        let mut values = vec![0.0; nodes.len()];
        let split = nodes.partition_point(|&v| v < x0);
        let (mut prev_x, mut acc) = (x0, y0);
        for i in split..nodes.len() {
            acc += self.integrate(prev_x, nodes[i])?;
            values[i] = acc;
            prev_x = nodes[i];
        }
        let (mut prev_x, mut acc) = (x0, y0);
        for i in (0..split).rev() {
            acc += self.integrate(prev_x, nodes[i])?;
            values[i] = acc;
            prev_x = nodes[i];
        }
        SampledField::new(grid.clone(), values)
    }

    pub fn sample(&self, grid: &Grid) -> Result<SampledField> {
        grid.sample(|x| self.eval(x))
    }

    /// `d/dx` of this profile. Consumes one analytic order.
    pub fn derivative_profile(&self) -> ScalarProfile {
        let inner = self.clone();
        Self::from_jet_fn(
            self.domain,
            format!("d/dx[{}]", self.label),
            self.order.saturating_sub(1),
            move |x| inner.apply(x).diff(x),
        )
    }

    /// `x -> int_{anchor}^{x} self`. Values come from adaptive quadrature at
    /// tolerance `tol`; the derivative orders are those of the integrand.
    ///
    /// Integrals up to a fixed lattice of knots around the anchor are cached,
    /// so an evaluation integrates only from the nearest knot. The cache is
    /// filled in a fixed order, so values do not depend on evaluation history.
    pub fn antiderivative(&self, anchor: f64, tol: f64) -> Result<ScalarProfile> {
        self.domain.check(anchor)?;
        let integrand = self.clone();
        let d = self.domain;
        let spacing = if d.lo.is_finite() && d.hi.is_finite() { (d.hi - d.lo) / ANTIDERIVATIVE_KNOTS } else { 0.5 };
        let cache = Arc::new(KnotCache::new(anchor, spacing));
        let f = move |x: &Jet| {
            let x0 = x.value();
            let q = cache.integral(&integrand, x0, tol);
            let h = integrand.jet_unchecked(x0);
            let hc = h.coeffs();
            let mut taylor = [0.0; JET_ORDER + 1];
            taylor[0] = q;
            for k in 0..JET_ORDER {
                taylor[k + 1] = hc[k] / (k + 1) as f64;
            }
            Jet::compose_series(&taylor, &(*x - x0))
        };
        let order = if self.is_analytic() { (self.order + 1).min(JET_ORDER) } else { 0 };
        Ok(Self::from_jet_fn(self.domain, format!("int[{}]", self.label), order, f))
    }

    /// `outer(self(x))`. The domain is that of `self`.
    pub fn then(&self, outer: &ScalarProfile) -> ScalarProfile {
        let inner = self.clone();
        let o = outer.clone();
        let label = format!("{} o {}", outer.label, self.label);
        Self::from_jet_fn(self.domain, label, self.order.min(outer.order), move |x| o.apply(&inner.apply(x)))
    }

    fn unary(&self, name: &str, f: impl Fn(&Jet) -> Jet + Send + Sync + 'static) -> ScalarProfile {
        let inner = self.clone();
        Self::from_jet_fn(self.domain, format!("{name}({})", self.label), self.order, move |x| f(&inner.apply(x)))
    }

    pub fn exp(&self) -> Self {
        self.unary("exp", Jet::exp)
    }
    pub fn ln(&self) -> Self {
        self.unary("ln", Jet::ln)
    }
    pub fn sqrt(&self) -> Self {
        self.unary("sqrt", Jet::sqrt)
    }
    pub fn powf(&self, a: f64) -> Self {
        let inner = self.clone();
        Self::from_jet_fn(self.domain, format!("({})^{a}", self.label), self.order, move |x| inner.apply(x).powf(a))
    }
    pub fn recip(&self) -> Self {
        self.unary("1/", Jet::recip)
    }
    pub fn square(&self) -> Self {
        let inner = self.clone();
        Self::from_jet_fn(self.domain, format!("({})^2", self.label), self.order, move |x| inner.apply(x).square())
    }
    pub fn sin(&self) -> Self {
        self.unary("sin", Jet::sin)
    }
    pub fn cos(&self) -> Self {
        self.unary("cos", Jet::cos)
    }
    pub fn tanh(&self) -> Self {
        self.unary("tanh", Jet::tanh)
    }
    pub fn coth(&self) -> Self {
        self.unary("coth", Jet::coth)
    }
    pub fn sech(&self) -> Self {
        self.unary("sech", Jet::sech)
    }
    pub fn csch(&self) -> Self {
        self.unary("csch", Jet::csch)
    }
    pub fn atan(&self) -> Self {
        self.unary("atan", Jet::atan)
    }
    pub fn atanh(&self) -> Self {
        self.unary("artanh", Jet::atanh)
    }
    pub fn acoth(&self) -> Self {
        self.unary("arcoth", Jet::acoth)
    }
    pub fn asin(&self) -> Self {
        self.unary("asin", Jet::asin)
    }
    pub fn acosh(&self) -> Self {
        self.unary("arcosh", Jet::acosh)
    }
    pub fn gd(&self) -> Self {
        self.unary("gd", Jet::gd)
    }

    fn binary(&self, rhs: &ScalarProfile, op: &str, f: impl Fn(Jet, Jet) -> Jet + Send + Sync + 'static) -> Self {
        let (a, b) = (self.clone(), rhs.clone());
        let domain = self.domain.intersect(&rhs.domain).unwrap_or(self.domain);
        Self::from_jet_fn(
            domain,
            format!("({} {op} {})", self.label, rhs.label),
            self.order.min(rhs.order),
            move |x| f(a.apply(x), b.apply(x)),
        )
    }

    fn scalar(&self, label: String, f: impl Fn(Jet) -> Jet + Send + Sync + 'static) -> Self {
        let a = self.clone();
        Self::from_jet_fn(self.domain, label, self.order, move |x| f(a.apply(x)))
    }
}

/// Finite-difference step for [`ScalarProfile::derivative`] on sampled data.
///
/// First derivatives use `max(1e-6, sqrt(eps) max(1,|x|))`; second derivatives
/// use `max(1e-4, eps^(1/4) max(1,|x|))`, the round-off balance point for a
/// three-point second difference.
pub fn fd_step(x: f64, order: usize) -> f64 {
    let scale = x.abs().max(1.0);
    if order == 1 {
        (f64::EPSILON.sqrt() * scale).max(1e-6)
    } else {
        (f64::EPSILON.powf(0.25) * scale).max(1e-4)
    }
}

macro_rules! profile_binop {
    ($trait:ident, $method:ident, $sym:literal) => {
        impl $trait<&ScalarProfile> for &ScalarProfile {
            type Output = ScalarProfile;
            fn $method(self, rhs: &ScalarProfile) -> ScalarProfile {
                self.binary(rhs, $sym, |a, b| $trait::$method(a, b))
            }
        }
        impl $trait<ScalarProfile> for ScalarProfile {
            type Output = ScalarProfile;
            fn $method(self, rhs: ScalarProfile) -> ScalarProfile {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ScalarProfile> for ScalarProfile {
            type Output = ScalarProfile;
            fn $method(self, rhs: &ScalarProfile) -> ScalarProfile {
                (&self).$method(rhs)
            }
        }
        impl $trait<ScalarProfile> for &ScalarProfile {
            type Output = ScalarProfile;
            fn $method(self, rhs: ScalarProfile) -> ScalarProfile {
                self.$method(&rhs)
            }
        }
        impl $trait<f64> for &ScalarProfile {
            type Output = ScalarProfile;
            fn $method(self, rhs: f64) -> ScalarProfile {
                self.scalar(format!("({} {} {rhs})", self.label, $sym), move |a| $trait::$method(a, rhs))
            }
        }
        impl $trait<f64> for ScalarProfile {
            type Output = ScalarProfile;
            fn $method(self, rhs: f64) -> ScalarProfile {
                (&self).$method(rhs)
            }
        }
    };
}

profile_binop!(Add, add, "+");
profile_binop!(Sub, sub, "-");
profile_binop!(Mul, mul, "*");
profile_binop!(Div, div, "/");

impl Neg for &ScalarProfile {
    type Output = ScalarProfile;
    fn neg(self) -> ScalarProfile {
        self.scalar(format!("-{}", self.label), |a| -a)
    }
}

impl Neg for ScalarProfile {
    type Output = ScalarProfile;
    fn neg(self) -> ScalarProfile {
        -&self
    }
}

impl Mul<&ScalarProfile> for f64 {
    type Output = ScalarProfile;
    fn mul(self, rhs: &ScalarProfile) -> ScalarProfile {
        rhs.scalar(format!("{self}*{}", rhs.label), move |a| a * self)
    }
}

impl Mul<ScalarProfile> for f64 {
    type Output = ScalarProfile;
    fn mul(self, rhs: ScalarProfile) -> ScalarProfile {
        self * &rhs
    }
}

impl Sub<&ScalarProfile> for f64 {
    type Output = ScalarProfile;
    fn sub(self, rhs: &ScalarProfile) -> ScalarProfile {
        rhs.scalar(format!("({self} - {})", rhs.label), move |a| -a + self)
    }
}

impl Sub<ScalarProfile> for f64 {
    type Output = ScalarProfile;
    fn sub(self, rhs: ScalarProfile) -> ScalarProfile {
        self - &rhs
    }
}

impl Div<&ScalarProfile> for f64 {
    type Output = ScalarProfile;
    fn div(self, rhs: &ScalarProfile) -> ScalarProfile {
        rhs.scalar(format!("{self}/{}", rhs.label), move |a| a.recip() * self)
    }
}

impl Div<ScalarProfile> for f64 {
    type Output = ScalarProfile;
    fn div(self, rhs: ScalarProfile) -> ScalarProfile {
        self / &rhs
    }
}

/// Knots per unit domain length used by [`ScalarProfile::antiderivative`] on
/// bounded domains.
const ANTIDERIVATIVE_KNOTS: f64 = 512.0;

/// Prefix integrals `int_{anchor}^{anchor + j h}` for `j = 0, ±1, ...`.
struct KnotCache {
    anchor: f64,
    spacing: f64,
    /// `[0]` for `j >= 0`, `[1]` for `j <= 0`.
    sides: [Mutex<Vec<f64>>; 2],
}

impl KnotCache {
    fn new(anchor: f64, spacing: f64) -> Self {
        KnotCache { anchor, spacing, sides: [Mutex::new(vec![0.0]), Mutex::new(vec![0.0])] }
    }

    fn integral(&self, f: &ScalarProfile, x: f64, tol: f64) -> f64 {
        let t = (x - self.anchor) / self.spacing;
        if !t.is_finite() {
            return f64::NAN;
        }
        let (side, dir) = if t >= 0.0 { (0, 1.0) } else { (1, -1.0) };
        let j = (t.abs().floor() as usize).saturating_sub(1);
        let mut table = self.sides[side].lock().unwrap_or_else(|e| e.into_inner());
        while table.len() <= j {
            let i = table.len();
            let (a, b) = (self.anchor + dir * (i - 1) as f64 * self.spacing, self.anchor + dir * i as f64 * self.spacing);
            let seg = integrate_adaptive(|s| f.value_unchecked(s), a, b, tol).unwrap_or(f64::NAN);
            let prev = table[i - 1];
            table.push(prev + seg);
        }
        let base = table[j];
        drop(table);
        let knot = self.anchor + dir * j as f64 * self.spacing;
        base + integrate_adaptive(|s| f.value_unchecked(s), knot, x, tol).unwrap_or(f64::NAN)
    }
}
