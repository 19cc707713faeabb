use crate::algebra::GeneratorPair;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::profiles::{Grid, ScalarProfile};

/// `V_s = (1/sigma) [(1/4 - s^2) F' + 2 s G'] + G^2`.
pub fn vs_family(gp: &GeneratorPair, s: f64) -> Result<ScalarProfile> {
    for p in [&gp.f, &gp.g] {
        if p.order() < 1 {
            return Err(Error::InsufficientOrder { available: p.order(), required: 1 });
        }
    }
    let (f, g, sigma) = (gp.f.clone(), gp.g.clone(), gp.sigma.clone());
    let a = 0.25 - s * s;
    let order = (gp.f.order().min(gp.g.order()) - 1).min(gp.sigma.order());
    Ok(ScalarProfile::from_jet_fn(gp.domain(), format!("V_s[s = {s}]"), order, move |x: &Jet| {
        let gj = g.apply(x);
        let bracket = f.apply(x).diff(x).scale(a) + gj.diff(x).scale(2.0 * s);
        bracket / sigma.apply(x) + gj.square()
    }))
}

/// The pseudoscalar potential linked to `V_{1/2}`: `W = sgn(sigma) G`.
///
/// For a decreasing map this is `-G`; with the `arcoth` family that
/// reproduces `W = b sqrt(x^2 - 1)` for amplitude `b` in the closed-form
/// convention.
pub fn pseudoscalar(gp: &GeneratorPair) -> ScalarProfile {
    let (g, sigma) = (gp.g.clone(), gp.sigma.clone());
    ScalarProfile::from_jet_fn(gp.domain(), "W = sgn(sigma) G", gp.g.order(), move |x: &Jet| {
        let gj = g.apply(x);
        if sigma.apply(x).value() < 0.0 {
            -gj
        } else {
            gj
        }
    })
}

/// Mass, Fermi velocity and the potentials of one family member.
#[derive(Clone, Debug)]
pub struct PotentialBundle {
    pub v_s: ScalarProfile,
    /// Present only at `k = 1/2`, where the Riccati link holds.
    pub w: Option<ScalarProfile>,
    pub v_f: ScalarProfile,
    pub m: ScalarProfile,
    pub s: f64,
    pub k: f64,
}

/// Labels closer than this to `1/2` count as the half-integer representation.
pub const HALF_TOL: f64 = 1e-12;

pub fn is_half(k: f64) -> bool {
    (k - 0.5).abs() <= HALF_TOL
}

impl PotentialBundle {
    /// `M = sigma^2`, `v_f = 1/|sigma|`, `V_s` at label `s`, and `W` when
    /// `k = 1/2`.
    pub fn from_family(gp: &GeneratorPair, k: f64, s: f64) -> Result<Self> {
        let m = gp.sigma.square().with_label("M");
        let sigma = gp.sigma.clone();
        let v_f = ScalarProfile::from_jet_fn(gp.domain(), "v_f = 1/sqrt(M)", gp.sigma.order(), move |x: &Jet| {
            let sj = sigma.apply(x);
            if sj.value() < 0.0 {
                -sj.recip()
            } else {
                sj.recip()
            }
        });
        let w = if is_half(k) { Some(pseudoscalar(gp)) } else { None };
        Ok(PotentialBundle { v_s: vs_family(gp, s)?, w, v_f, m, s, k })
    }

    /// Largest `|v_f^2 M - 1|` on the grid.
    pub fn link_deviation(&self, grid: &Grid) -> Result<f64> {
        let mut worst = 0.0f64;
        for &x in grid.nodes() {
            let v = self.v_f.eval(x)?;
            worst = worst.max((v * v * self.m.eval(x)? - 1.0).abs());
        }
        Ok(worst)
    }
}
