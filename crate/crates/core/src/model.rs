//! Complete solvable models: a generator family composed with a map, the
//! mass and Fermi velocity it induces, the potentials, labels and the Dirac
//! constant `A = m v_f^2`.

use crate::algebra::{build_family, FamilyClass, FamilySpec, GeneratorPair, PctMap};
use crate::dirac::{spectrum, DiracModel, SpectrumEntry};
use crate::error::{Error, Result};
use crate::potentials::{pseudoscalar, PotentialBundle};
use crate::profiles::{Grid, Interval, ScalarProfile};

/// Half-width of the default window for the identity map.
pub const IDENTITY_HALF_WIDTH: f64 = 20.0;

/// Outer end of the default window for the arccoth map.
pub const ARCCOTH_OUTER: f64 = 10.0;

/// Parameters of a model. For the `omega > 0` class on the arccoth map, `b`
/// is the amplitude of the closed forms `W = b sqrt(x^2 - 1)`, `chi_0 =
/// e^{b arccosh |x|}`; see [`ModelSpec::generator_amplitude`].
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub class: FamilyClass,
    pub b: f64,
    pub c: f64,
    pub map: PctMap,
    /// `None` selects [`default_domain`].
    pub domain: Option<Interval>,
    pub k: f64,
    pub s: f64,
    pub a: f64,
}

/// The natural `x` window for a class and map.
pub fn default_domain(class: FamilyClass, map: PctMap, c: f64) -> Interval {
    let positive = class == FamilyClass::OmegaPositive;
    match map {
        PctMap::Identity if positive => Interval { lo: c, hi: c + IDENTITY_HALF_WIDTH, open_lo: true, open_hi: false },
        PctMap::Identity => Interval { lo: -IDENTITY_HALF_WIDTH, hi: IDENTITY_HALF_WIDTH, open_lo: false, open_hi: false },
        // F = coth(u - c) is singular at x = tanh(-c); keep to one side.
        PctMap::Artanh if positive => Interval { lo: (-c).tanh(), hi: 1.0, open_lo: true, open_hi: true },
        PctMap::Artanh => Interval { lo: -1.0, hi: 1.0, open_lo: true, open_hi: true },
        PctMap::Arccoth => Interval { lo: 1.0, hi: ARCCOTH_OUTER, open_lo: true, open_hi: false },
    }
}

impl ModelSpec {
    /// Identity map (`M = v_f = 1`).
    pub fn constant_mass(class: FamilyClass, b: f64, c: f64, k: f64, a: f64) -> Self {
        ModelSpec { class, b, c, map: PctMap::Identity, domain: None, k, s: k, a }
    }

    /// `u = artanh x` with `omega < 0`: `M = 1/(1-x^2)^2`, `v_f = 1 - x^2`,
    /// `W = b sqrt(1 - x^2)` at `k = 1/2`.
    pub fn artanh_example(b: f64, k: f64, a: f64) -> Self {
        ModelSpec { class: FamilyClass::OmegaNegative, b, c: 0.0, map: PctMap::Artanh, domain: None, k, s: k, a }
    }

    /// `u = arccoth x` with `omega > 0` on `x > 1`: `M = 1/(x^2-1)^2`,
    /// `v_f = x^2 - 1`, `W = b sqrt(x^2 - 1)` at `k = 1/2`.
    pub fn arccoth_example(b: f64, k: f64, a: f64) -> Self {
        ModelSpec { class: FamilyClass::OmegaPositive, b, c: 0.0, map: PctMap::Arccoth, domain: None, k, s: k, a }
    }

    pub fn domain(&self) -> Interval {
        self.domain.unwrap_or_else(|| default_domain(self.class, self.map, self.c))
    }

    /// Amplitude handed to the generator `G`. `sigma = u'` is negative for
    /// arccoth and `csch(arccoth x)` changes sign with `x`, so `W = sgn(sigma) G
    /// = b sqrt(x^2 - 1)` needs `-b` on `x > 1` and `+b` on `x < -1`.
    pub fn generator_amplitude(&self) -> f64 {
        match (self.class, self.map) {
            (FamilyClass::OmegaPositive, PctMap::Arccoth) if self.domain().lo >= 1.0 => -self.b,
            _ => self.b,
        }
    }

    pub fn family_spec(&self) -> Result<FamilySpec> {
        FamilySpec::with_map(self.class, self.generator_amplitude(), self.c, self.map, self.domain(), self.k, self.s)
    }
}

/// A built model.
#[derive(Clone, Debug)]
pub struct ModelBundle {
    pub spec: ModelSpec,
    pub family: GeneratorPair,
    /// `M`, `v_f`, `V_s`, and `W` when `k = 1/2`.
    pub potentials: PotentialBundle,
}

impl ModelBundle {
    pub fn build(spec: &ModelSpec) -> Result<Self> {
        if !(spec.a > 0.0) || !spec.a.is_finite() {
            return Err(Error::InvalidParam(format!("A = {} must be a positive finite constant", spec.a)));
        }
        let family = build_family(&spec.family_spec()?)?;
        let potentials = PotentialBundle::from_family(&family, spec.k, spec.s)?;
        Ok(ModelBundle { spec: spec.clone(), family, potentials })
    }

    pub fn domain(&self) -> Interval {
        self.family.domain()
    }

    /// Interior grid of `n` nodes kept `margin` away from open ends.
    pub fn grid(&self, n: usize, margin: f64) -> Result<Grid> {
        Grid::new(self.domain(), n, margin)
    }

    pub fn m(&self) -> &ScalarProfile {
        &self.potentials.m
    }

    pub fn v_f(&self) -> &ScalarProfile {
        &self.potentials.v_f
    }

    pub fn v_s(&self) -> &ScalarProfile {
        &self.potentials.v_s
    }

    /// `W = sgn(sigma) G`, the pseudoscalar potential tied to `V_{1/2}`; it
    /// exists for every `k` but only solves the Riccati link at `k = 1/2`.
    pub fn pseudoscalar(&self) -> ScalarProfile {
        self.potentials.w.clone().unwrap_or_else(|| pseudoscalar(&self.family))
    }

    /// The Dirac model with `m = A / v_f^2`.
    pub fn dirac_model(&self) -> Result<DiracModel> {
        DiracModel::with_constancy(self.potentials.v_f.clone(), self.pseudoscalar(), self.spec.a, self.spec.k)
    }

    /// `E^2 = A^2 - (k - 1/2)^2` for each `k`.
    pub fn spectrum(&self, ks: &[f64]) -> Result<Vec<SpectrumEntry>> {
        spectrum(self.spec.a, ks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ZeroSign;
    use crate::potentials::{riccati_residual, vs_family};
    use approx::assert_abs_diff_eq;

    fn builtins(k: f64) -> Vec<ModelSpec> {
        let mut out = vec![ModelSpec::artanh_example(1.0, k, 2.0), ModelSpec::arccoth_example(-1.0, k, 1.0)];
        for class in [
            FamilyClass::OmegaNegative,
            FamilyClass::OmegaZero(ZeroSign::Plus),
            FamilyClass::OmegaZero(ZeroSign::Minus),
            FamilyClass::OmegaPositive,
        ] {
            out.push(ModelSpec::constant_mass(class, 1.0, 0.3, k, 1.0));
        }
        out
    }

    #[test]
    fn artanh_closed_forms() {
        let m = ModelBundle::build(&ModelSpec::artanh_example(1.0, 0.5, 2.0)).unwrap();
        assert_abs_diff_eq!(m.m().eval(0.6).unwrap(), 2.44140625, epsilon = 1e-12);
        assert_abs_diff_eq!(m.v_f().eval(0.6).unwrap(), 0.64, epsilon = 1e-15);
        assert_abs_diff_eq!(m.v_s().eval(0.6).unwrap(), 0.16, epsilon = 1e-12);
        assert_abs_diff_eq!(m.pseudoscalar().eval(0.6).unwrap(), 0.8, epsilon = 1e-15);
        let e = m.spectrum(&[0.5]).unwrap();
        assert_eq!(e[0].e_squared, 4.0);
    }

    #[test]
    fn arccoth_closed_forms() {
        let m = ModelBundle::build(&ModelSpec::arccoth_example(-1.0, 0.5, 1.0)).unwrap();
        let x = 2f64.sqrt();
        assert_abs_diff_eq!(m.v_s().eval(x).unwrap(), 1.0 - x, epsilon = 1e-12);
        assert_abs_diff_eq!(m.pseudoscalar().eval(3.0).unwrap(), -(8f64).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(m.v_f().eval(3.0).unwrap(), 8.0, epsilon = 1e-12);
        // Mirror side: generator amplitude keeps W = b sqrt(x^2 - 1).
        let mut spec = ModelSpec::arccoth_example(-1.0, 0.5, 1.0);
        spec.domain = Some(Interval::new(-10.0, -1.0, false, true).unwrap());
        let m = ModelBundle::build(&spec).unwrap();
        assert_abs_diff_eq!(m.pseudoscalar().eval(-3.0).unwrap(), -(8f64).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn identity_w_is_sech() {
        let m = ModelBundle::build(&ModelSpec::constant_mass(FamilyClass::OmegaNegative, 1.0, 0.3, 0.5, 1.0)).unwrap();
        for x in [-3.0f64, 0.0, 2.5] {
            assert_abs_diff_eq!(m.pseudoscalar().eval(x).unwrap(), 1.0 / (x - 0.3).cosh(), epsilon = 1e-15);
        }
    }

    #[test]
    fn rejects_bad_models() {
        assert!(ModelBundle::build(&ModelSpec::artanh_example(1.0, 0.5, 0.0)).is_err());
        let mut spec = ModelSpec::artanh_example(1.0, 0.5, 1.0);
        spec.domain = Some(Interval::closed(-2.0, 0.5).unwrap());
        assert!(ModelBundle::build(&spec).is_err());
        let mut spec = ModelSpec::arccoth_example(-1.0, 0.5, 1.0);
        spec.domain = Some(Interval::closed(0.5, 3.0).unwrap());
        assert!(ModelBundle::build(&spec).is_err());
    }

    #[test]
    fn riccati_link_holds_only_at_half() {
        for k in [0.3, 0.5, 0.8] {
            for spec in builtins(k) {
                let m = ModelBundle::build(&spec).unwrap();
                let g = m.grid(1001, 1e-3).unwrap();
                let vs = vs_family(&m.family, k).unwrap();
                let r = riccati_residual(&m.pseudoscalar(), m.v_f(), &vs, &g).unwrap();
                if k == 0.5 {
                    assert!(r.mixed() <= 1e-10, "{:?} {:e}", spec, r.mixed());
                } else {
                    assert!(r.sup() >= 1e-3, "{:?} {:e}", spec, r.sup());
                }
            }
        }
    }
}
