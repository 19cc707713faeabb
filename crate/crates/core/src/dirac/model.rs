use crate::error::{Error, Result};
use crate::profiles::ScalarProfile;

/// The `(1+1)`-dimensional Dirac problem with position-dependent mass `m`,
/// Fermi velocity `v_f` and pseudoscalar potential `W`. No electrostatic term
/// is carried.
#[derive(Clone, Debug)]
pub struct DiracModel {
    pub v_f: ScalarProfile,
    pub m: ScalarProfile,
    pub w: ScalarProfile,
    /// The constant `A = m v_f^2` when the constancy condition is engaged.
    pub a: Option<f64>,
    pub k: f64,
}

impl DiracModel {
    /// A model with an arbitrary mass profile.
    pub fn new(v_f: ScalarProfile, m: ScalarProfile, w: ScalarProfile, k: f64) -> Self {
        DiracModel { v_f, m, w, a: None, k }
    }

    /// A model whose mass obeys `m v_f^2 = A`.
    pub fn with_constancy(v_f: ScalarProfile, w: ScalarProfile, a: f64, k: f64) -> Result<Self> {
        let m = mustafa_mass(&v_f, a)?;
        Ok(DiracModel { v_f, m, w, a: Some(a), k })
    }
}

/// `m = A / v_f^2`.
pub fn mustafa_mass(v_f: &ScalarProfile, a: f64) -> Result<ScalarProfile> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParam(format!("A = {a} must be a positive finite constant")));
    }
    Ok((a * v_f.square().recip()).with_label(format!("m = {a}/v_f^2")))
}

/// `v_f = 1/sqrt(M)`, the positive root.
pub fn fermi_from_mass(m: &ScalarProfile) -> ScalarProfile {
    m.powf(-0.5).with_label("v_f = 1/sqrt(M)")
}

/// One row of the algebraic spectrum `E^2 = A^2 - (k - 1/2)^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub k: f64,
    pub e_squared: f64,
    /// `+sqrt(E^2)` when real.
    pub e: Option<f64>,
    pub real: bool,
}

/// `E^2 = A^2 - (k - 1/2)^2` for each `k`; real energies need
/// `A^2 >= (k - 1/2)^2`.
pub fn spectrum(a: f64, k_values: &[f64]) -> Result<Vec<SpectrumEntry>> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParam(format!("A = {a} must be a positive finite constant")));
    }
    Ok(k_values
        .iter()
        .map(|&k| {
            let d = k - 0.5;
            let (a2, gap) = (a * a, d * d);
            let real = a2 >= gap;
            let e_squared = a2 - gap;
            SpectrumEntry { k, e_squared, e: real.then(|| e_squared.sqrt()), real }
        })
        .collect())
}
