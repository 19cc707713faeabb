use proptest::prelude::*;
use sodirac_core::algebra::ground_state;
use sodirac_core::{Error, ModelBundle, ModelSpec};

/// Central difference of `f` at `x`.
fn fd(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-5;
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[test]
fn artanh_model_point_values() {
    let m = ModelBundle::build(&ModelSpec::artanh_example(1.0, 0.5, 2.0)).unwrap();
    assert!((m.v_s().eval(0.6).unwrap() - 0.16).abs() < 1e-12);
    assert!((m.m().eval(0.6).unwrap() - 2.44140625).abs() < 1e-12);
    assert!((m.pseudoscalar().eval(0.6).unwrap() - 0.8).abs() < 1e-12);
}

#[test]
fn bundle_rejects_non_positive_mass_constant() {
    for a in [0.0, -1.0, f64::NAN] {
        assert!(ModelBundle::build(&ModelSpec::artanh_example(1.0, 0.5, a)).is_err());
    }
}

#[test]
fn spectrum_matches_gap_formula() {
    let m = ModelBundle::build(&ModelSpec::artanh_example(1.0, 0.5, 1.0)).unwrap();
    let rows = m.spectrum(&[0.5, 1.0, 1.5, 3.0]).unwrap();
    for r in &rows {
        assert!((r.e_squared - (1.0 - (r.k - 0.5).powi(2))).abs() < 1e-14);
        assert_eq!(r.real, r.e_squared >= 0.0);
    }
    assert!(!rows[3].real && rows[3].e.is_none());
}

#[test]
fn evaluation_outside_domain_is_an_error() {
    let m = ModelBundle::build(&ModelSpec::artanh_example(1.0, 0.5, 2.0)).unwrap();
    assert!(matches!(m.m().eval(1.5), Err(Error::OutOfDomain { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // At k = 1/2, W^2 + v_f W' = V_s with W' from finite differences of the
    // closed form b sqrt(1 - x^2).
    #[test]
    fn riccati_by_finite_differences(b in 0.2f64..4.0, x in -0.9f64..0.9) {
        let m = ModelBundle::build(&ModelSpec::artanh_example(b, 0.5, 1.0)).unwrap();
        let w = |t: f64| b * (1.0 - t * t).sqrt();
        let lhs = w(x) * w(x) + m.v_f().eval(x).unwrap() * fd(w, x);
        let vs = m.v_s().eval(x).unwrap();
        prop_assert!((lhs - vs).abs() <= 1e-6 * vs.abs().max(1.0), "{} vs {}", lhs, vs);
    }

    // The ground state satisfies chi' = sigma (G - (k - 1/2) F) chi.
    #[test]
    fn ground_state_log_derivative(b in 0.2f64..3.0, k in 0.5f64..2.5, x in -0.8f64..0.8) {
        let m = ModelBundle::build(&ModelSpec::artanh_example(b, k, 1.0)).unwrap();
        let g = m.grid(201, 1e-3).unwrap();
        let chi0 = ground_state(&m.family, k, &g).unwrap();
        let chi = |t: f64| chi0.chi().eval(t).unwrap();
        let gp = &m.family;
        let rhs = gp.sigma.eval(x).unwrap() * (gp.g.eval(x).unwrap() - (k - 0.5) * gp.f.eval(x).unwrap()) * chi(x);
        let lhs = fd(chi, x);
        prop_assert!((lhs - rhs).abs() <= 1e-6 * rhs.abs().max(chi(x).abs()), "{} vs {}", lhs, rhs);
    }
}
