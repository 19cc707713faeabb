use std::fmt;

use crate::error::{Error, Result};
use crate::profiles::{Grid, Interval, SampledField, ScalarProfile};

/// Sign tag of the `omega = 0` class: `Plus` gives `F = +1, G = b e^{-(u-c)}`,
/// `Minus` gives `F = -1, G = b e^{+(u-c)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroSign {
    Plus,
    Minus,
}

impl ZeroSign {
    pub fn value(self) -> f64 {
        match self {
            ZeroSign::Plus => 1.0,
            ZeroSign::Minus => -1.0,
        }
    }
}

/// The three generator families, distinguished by the sign of
/// `omega = (F^2 - 1) / G^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyClass {
    OmegaNegative,
    OmegaZero(ZeroSign),
    OmegaPositive,
}

impl FamilyClass {
    /// `omega` for amplitude `b`: `-1/b^2`, `0` or `1/b^2`.
    pub fn omega(self, b: f64) -> f64 {
        match self {
            FamilyClass::OmegaNegative => -1.0 / (b * b),
            FamilyClass::OmegaZero(_) => 0.0,
            FamilyClass::OmegaPositive => 1.0 / (b * b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyClass::OmegaNegative => "omega_negative",
            FamilyClass::OmegaZero(ZeroSign::Plus) => "omega_zero_plus",
            FamilyClass::OmegaZero(ZeroSign::Minus) => "omega_zero_minus",
            FamilyClass::OmegaPositive => "omega_positive",
        }
    }
}

impl fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Point canonical maps with closed forms: `u = x`, `u = c + artanh x` on
/// `|x| < 1` and `u = c + arcoth x` on `|x| > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PctMap {
    Identity,
    Artanh,
    Arccoth,
}

impl PctMap {
    pub fn name(self) -> &'static str {
        match self {
            PctMap::Identity => "identity",
            PctMap::Artanh => "artanh",
            PctMap::Arccoth => "arccoth",
        }
    }

    /// Checks that `domain` lies where the map is defined; for `Arccoth` it
    /// must sit on one side of `[-1, 1]`.
    pub fn check_domain(self, domain: &Interval) -> Result<()> {
        let ok = match self {
            PctMap::Identity => true,
            PctMap::Artanh => {
                domain.lo >= -1.0 && domain.hi <= 1.0 && (domain.lo > -1.0 || domain.open_lo) && (domain.hi < 1.0 || domain.open_hi)
            }
            PctMap::Arccoth => {
                (domain.lo > 1.0 || (domain.lo == 1.0 && domain.open_lo))
                    || (domain.hi < -1.0 || (domain.hi == -1.0 && domain.open_hi))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParam(format!("{} map is undefined on {domain}", self.name())))
        }
    }

    /// The profile `u(x)` on `domain`.
    pub fn profile(self, c: f64, domain: Interval) -> Result<ScalarProfile> {
        self.check_domain(&domain)?;
        let x = ScalarProfile::identity(domain);
        let u = match self {
            PctMap::Identity => return Ok(x.with_label("u(x) = x")),
            PctMap::Artanh => x.atanh() + c,
            PctMap::Arccoth => x.acoth() + c,
        };
        Ok(u.with_label(format!("u(x) = {c} + {}(x)", self.name())))
    }
}

/// Parameters selecting one member of a generator family.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub class: FamilyClass,
    pub b: f64,
    pub c: f64,
    /// The point canonical map `u(x)`.
    pub u: ScalarProfile,
    pub k: f64,
    pub s: f64,
}

impl FamilySpec {
    pub fn new(class: FamilyClass, b: f64, c: f64, u: ScalarProfile, k: f64, s: f64) -> Result<Self> {
        let spec = FamilySpec { class, b, c, u, k, s };
        spec.validate()?;
        Ok(spec)
    }

    /// Spec whose `u` is one of the closed-form maps on `domain`.
    pub fn with_map(class: FamilyClass, b: f64, c: f64, map: PctMap, domain: Interval, k: f64, s: f64) -> Result<Self> {
        Self::new(class, b, c, map.profile(c, domain)?, k, s)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.b.is_finite() || !self.c.is_finite() {
            return Err(Error::InvalidParam(format!("b = {}, c = {} must be finite", self.b, self.c)));
        }
        if self.b == 0.0 && !matches!(self.class, FamilyClass::OmegaZero(_)) {
            return Err(Error::InvalidParam(format!("b must be nonzero for the {} class", self.class)));
        }
        if !(self.k >= 0.0) || !self.k.is_finite() {
            return Err(Error::InvalidParam(format!("k = {} must be a finite real >= 0", self.k)));
        }
        let n = self.s - self.k;
        if !(n >= -1e-12 && (n - n.round()).abs() <= 1e-12) {
            return Err(Error::InvalidParam(format!("s - k = {n} must be a non-negative integer")));
        }
        if self.u.order() < 2 {
            return Err(Error::InsufficientOrder { available: self.u.order(), required: 2 });
        }
        Ok(())
    }
}

/// The generator functions `F`, `G` and the signed root `sigma = u'`.
#[derive(Clone, Debug)]
pub struct GeneratorPair {
    pub f: ScalarProfile,
    pub g: ScalarProfile,
    pub sigma: ScalarProfile,
    /// The map `u(x)` the pair is composed with.
    pub u: ScalarProfile,
    pub class: FamilyClass,
    pub b: f64,
    pub c: f64,
}

impl GeneratorPair {
    pub fn domain(&self) -> Interval {
        *self.sigma.domain()
    }

    /// The class value of `omega`.
    pub fn omega(&self) -> f64 {
        self.class.omega(self.b)
    }
}

/// `F`, `G` of the requested class composed with `u`, and `sigma = u'`.
pub fn build_family(spec: &FamilySpec) -> Result<GeneratorPair> {
    spec.validate()?;
    let (b, c) = (spec.b, spec.c);
    let w = &spec.u - c;
    let domain = *spec.u.domain();
    let (f, g) = match spec.class {
        FamilyClass::OmegaNegative => (w.tanh(), b * w.sech()),
        FamilyClass::OmegaPositive => (w.coth(), b * w.csch()),
        FamilyClass::OmegaZero(sign) => {
            let e = sign.value();
            (ScalarProfile::constant(domain, e), b * (-e * &w).exp())
        }
    };
    Ok(GeneratorPair {
        f: f.with_label(format!("F[{}]", spec.class)),
        g: g.with_label(format!("G[{}, b = {b}]", spec.class)),
        sigma: spec.u.derivative_profile().with_label("sigma = u'"),
        u: spec.u.clone(),
        class: spec.class,
        b,
        c,
    })
}

/// Signed root `sigma = u'` and mass `M = sigma^2`, with `|u'|` checked
/// against `1e-12` and a constant sign on the grid.
pub fn pct_mass(u: &ScalarProfile, grid: &Grid) -> Result<(ScalarProfile, ScalarProfile)> {
    let sigma = u.derivative_profile().with_label("sigma = u'");
    let mut sign = 0.0;
    for &x in grid.nodes() {
        let slope = sigma.eval(x)?;
        if !(slope.abs() >= 1e-12) {
            return Err(Error::DegenerateMap { x, slope });
        }
        if sign == 0.0 {
            sign = slope.signum();
        } else if slope.signum() != sign {
            return Err(Error::DegenerateMap { x, slope });
        }
    }
    let m = sigma.square().with_label("M = sigma^2");
    Ok((m, sigma))
}

/// `r_F = F' - sigma (1 - F^2)` and `r_G = G' + sigma F G` on the grid.
pub fn constraint_residuals(gp: &GeneratorPair, grid: &Grid) -> Result<(SampledField, SampledField)> {
    let rf = grid.sample(|x| {
        let (f, s) = (gp.f.eval(x)?, gp.sigma.eval(x)?);
        Ok(gp.f.derivative(x, 1)? - s * (1.0 - f * f))
    })?;
    let rg = grid.sample(|x| {
        let (f, g, s) = (gp.f.eval(x)?, gp.g.eval(x)?, gp.sigma.eval(x)?);
        Ok(gp.g.derivative(x, 1)? + s * f * g)
    })?;
    Ok((rf, rg))
}

/// Estimate of `omega = (F^2 - 1)/G^2` over a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OmegaEstimate {
    pub omega: f64,
    /// `max |F^2 - 1 - omega G^2| / max(1, F^2)` over the nodes.
    pub max_deviation: f64,
}

/// Least-squares fit of `F^2 - 1 = omega G^2` over the nodes.
///
/// The pointwise quotient loses all precision where `F^2` rounds to 1 (for
/// instance `tanh` far from the center), so the estimate weights each node by
/// `G^4` and the deviation is measured on the numerator.
pub fn omega_invariant(gp: &GeneratorPair, grid: &Grid) -> Result<OmegaEstimate> {
    let mut pts = Vec::with_capacity(grid.len());
    for &x in grid.nodes() {
        let (f, g) = (gp.f.eval(x)?, gp.g.eval(x)?);
        if !(g.abs() >= 1e-14) {
            return Err(Error::DivisionByZero { x, value: g.abs() });
        }
        pts.push((f, g));
    }
    let num: f64 = pts.iter().map(|(f, g)| (f * f - 1.0) * g * g).sum();
    let den: f64 = pts.iter().map(|(_, g)| g.powi(4)).sum();
    let omega = num / den;
    let max_deviation =
        pts.iter().map(|(f, g)| (f * f - 1.0 - omega * g * g).abs() / (f * f).max(1.0)).fold(0.0, f64::max);
    Ok(OmegaEstimate { omega, max_deviation })
}
