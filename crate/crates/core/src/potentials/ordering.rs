use std::fmt;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::profiles::ScalarProfile;

/// von Roos ambiguity parameters `(eta, beta, gamma)` with
/// `eta + beta + gamma = -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderingParams {
    eta: f64,
    beta: f64,
    gamma: f64,
}

impl OrderingParams {
    pub fn new(eta: f64, beta: f64, gamma: f64) -> Result<Self> {
        let sum = eta + beta + gamma;
        if !((sum + 1.0).abs() <= 1e-12) {
            return Err(Error::OrderingViolation { sum });
        }
        Ok(OrderingParams { eta, beta, gamma })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Coefficient of `M''/M^2` in the effective potential.
    pub fn curvature_coefficient(&self) -> f64 {
        0.5 * (self.beta + 1.0)
    }

    /// Coefficient of `-M'^2/M^3` in the effective potential.
    pub fn gradient_coefficient(&self) -> f64 {
        self.eta * (self.eta + self.beta + 1.0) + self.beta + 1.0
    }
}

impl fmt::Display for OrderingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(eta, beta, gamma) = ({}, {}, {})", self.eta, self.beta, self.gamma)
    }
}

/// Named orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingPreset {
    BenDanielDuke,
    ZhuKroemer,
    MustafaMazharimousavi,
}

impl OrderingPreset {
    pub const ALL: [OrderingPreset; 3] =
        [OrderingPreset::BenDanielDuke, OrderingPreset::ZhuKroemer, OrderingPreset::MustafaMazharimousavi];

    pub fn params(self) -> OrderingParams {
        let (eta, beta, gamma) = match self {
            OrderingPreset::BenDanielDuke => (0.0, -1.0, 0.0),
            OrderingPreset::ZhuKroemer => (-0.5, 0.0, -0.5),
            OrderingPreset::MustafaMazharimousavi => (-0.25, -0.5, -0.25),
        };
        OrderingParams { eta, beta, gamma }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderingPreset::BenDanielDuke => "bendaniel_duke",
            OrderingPreset::ZhuKroemer => "zhu_kroemer",
            OrderingPreset::MustafaMazharimousavi => "mustafa_mazharimousavi",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// `V_eff = V + (beta+1)/2 M''/M^2 - (eta(eta+beta+1) + beta + 1) M'^2/M^3`.
pub fn veff(m: &ScalarProfile, v: &ScalarProfile, ord: &OrderingParams) -> Result<ScalarProfile> {
    let ord = OrderingParams::new(ord.eta, ord.beta, ord.gamma)?;
    if m.is_analytic() && m.order() < 2 {
        return Err(Error::InsufficientOrder { available: m.order(), required: 2 });
    }
    let (a, g) = (ord.curvature_coefficient(), ord.gradient_coefficient());
    let (mp, vp) = (m.clone(), v.clone());
    let order = m.order().saturating_sub(2).min(v.order());
    let domain = m.domain().intersect(v.domain()).unwrap_or(*m.domain());
    let label = format!("V_eff[{}, {ord}]", v.label());
    Ok(ScalarProfile::from_jet_fn(domain, label, order, move |x: &Jet| {
        let mj = mp.apply(x);
        let m1 = mj.diff(x);
        let m2 = m1.diff(x);
        let mut out = vp.apply(x);
        if a != 0.0 {
            out += (m2 / mj.square()).scale(a);
        }
        if g != 0.0 {
            out += (m1.square() / (mj * mj.square())).scale(-g);
        }
        out
    }))
}
