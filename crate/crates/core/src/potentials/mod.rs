//! Potentials: the von Roos effective potential under an ordering, the
//! one-parameter family `V_s`, the pseudoscalar potential `W` tied to it by
//! `W^2 + v_f W' = V_s`, and residuals of the equations they enter.

mod family;
mod ordering;
mod residuals;
mod riccati;

pub use family::{is_half, pseudoscalar, vs_family, PotentialBundle, HALF_TOL};
pub use ordering::{veff, OrderingParams, OrderingPreset};
pub use residuals::{chi_equation_residual, curvature_identity_residual, eigenvalue, psi_equation_residual, riccati_residual};
pub use riccati::{riccati_solve, riccati_solve_with, RiccatiOptions};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        build_family, first_excited, ground_state, ladder_apply, Direction, FamilyClass, FamilySpec, GeneratorPair,
        LadderState, PctMap, ZeroSign,
    };
    use crate::error::Error;
    use crate::profiles::{Grid, Interval, ScalarProfile};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn unit() -> Interval {
        Interval::open(-1.0, 1.0).unwrap()
    }

    fn outer() -> Interval {
        Interval::new(1.0, 10.0, true, false).unwrap()
    }

    fn line() -> Interval {
        Interval::closed(-20.0, 20.0).unwrap()
    }

    fn pair(class: FamilyClass, b: f64, c: f64, map: PctMap, d: Interval) -> GeneratorPair {
        build_family(&FamilySpec::with_map(class, b, c, map, d, 0.5, 0.5).unwrap()).unwrap()
    }

    fn grid(d: Interval, n: usize) -> Grid {
        Grid::new(d, n, 1e-3).unwrap()
    }

    #[test]
    fn presets_satisfy_constraint() {
        for p in OrderingPreset::ALL {
            let o = p.params();
            assert_eq!(o.eta() + o.beta() + o.gamma(), -1.0);
            assert!(OrderingParams::new(o.eta(), o.beta(), o.gamma()).is_ok());
            assert_eq!(OrderingPreset::from_name(p.name()), Some(p));
        }
        assert!(matches!(OrderingParams::new(0.0, 0.0, 0.0), Err(Error::OrderingViolation { sum }) if sum == 0.0));
    }

    #[test]
    fn veff_examples() {
        let m = ScalarProfile::polynomial(unit(), &[1.0, 0.0, -1.0]).powf(-2.0);
        let v = ScalarProfile::polynomial(unit(), &[0.3, -1.0, 2.0]);
        let bdd = veff(&m, &v, &OrderingPreset::BenDanielDuke.params()).unwrap();
        for x in [-0.9, -0.2, 0.0, 0.6] {
            assert_eq!(bdd.eval(x).unwrap(), v.eval(x).unwrap());
        }

        let zero = ScalarProfile::constant(unit(), 0.0);
        let zk = veff(&m, &zero, &OrderingPreset::ZhuKroemer.params()).unwrap();
        assert_abs_diff_eq!(zk.eval(0.0).unwrap(), 2.0, epsilon = 1e-10);
        // Oracle: M'' = 4(1+5x^2)/(1-x^2)^4, M' = 4x/(1-x^2)^3.
        let x: f64 = 0.6;
        let q = 1.0 - x * x;
        let (mv, m1, m2) = (q.powi(-2), 4.0 * x / q.powi(3), 4.0 * (1.0 + 5.0 * x * x) / q.powi(4));
        let want = 0.5 * m2 / (mv * mv) - 0.75 * m1 * m1 / mv.powi(3);
        assert_abs_diff_eq!(zk.eval(x).unwrap(), want, epsilon = 1e-10);

        let one = ScalarProfile::constant(unit(), 1.0);
        let v0 = ScalarProfile::constant(unit(), -3.25);
        let mm = veff(&one, &v0, &OrderingPreset::MustafaMazharimousavi.params()).unwrap();
        assert_eq!(mm.eval(0.4).unwrap(), -3.25);
    }

    proptest! {
        #[test]
        fn veff_reduces_to_potential_for_constant_mass(eta in -2.0..2.0f64, beta in -2.0..2.0f64, m0 in 0.1..5.0f64, x in -0.9..0.9f64) {
            let ord = OrderingParams::new(eta, beta, -1.0 - eta - beta).unwrap();
            let v = ScalarProfile::identity(unit()).sin();
            let out = veff(&ScalarProfile::constant(unit(), m0), &v, &ord).unwrap();
            prop_assert_eq!(out.eval(x).unwrap(), v.eval(x).unwrap());
        }
    }

    #[test]
    fn vs_family_examples() {
        let gp = pair(FamilyClass::OmegaNegative, 1.0, 0.0, PctMap::Artanh, unit());
        let vs = vs_family(&gp, 0.5).unwrap();
        assert_abs_diff_eq!(vs.eval(0.6).unwrap(), 0.16, epsilon = 1e-12);
        for x in [-0.95, -0.3, 0.2, 0.9] {
            let q: f64 = 1.0 - x * x;
            assert_abs_diff_eq!(vs.eval(x).unwrap(), q - x * q.sqrt(), epsilon = 1e-12);
        }

        let gp = pair(FamilyClass::OmegaNegative, 1.0, 0.0, PctMap::Identity, line());
        assert_abs_diff_eq!(vs_family(&gp, 0.5).unwrap().eval(0.0).unwrap(), 1.0, epsilon = 1e-15);

        // Closed-form amplitude b = -1 is generator amplitude +1 on x > 1.
        let gp = pair(FamilyClass::OmegaPositive, 1.0, 0.0, PctMap::Arccoth, outer());
        let x = 2f64.sqrt();
        assert_abs_diff_eq!(vs_family(&gp, 0.5).unwrap().eval(x).unwrap(), 1.0 - x, epsilon = 1e-12);
        assert_abs_diff_eq!(pseudoscalar(&gp).eval(3.0).unwrap(), -(8f64).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn vs_family_general_s_matches_hand_expansion() {
        // omega < 0, u = x: V_s = (1/4 - s^2) sech^2 x - 2 s b sech x tanh x + b^2 sech^2 x.
        let (b, s) = (0.7, 1.8);
        let gp = pair(FamilyClass::OmegaNegative, b, 0.0, PctMap::Identity, line());
        let vs = vs_family(&gp, s).unwrap();
        for x in [-2.0f64, 0.1, 1.3] {
            let (sech, tanh) = (1.0 / x.cosh(), x.tanh());
            let want = (0.25 - s * s + b * b) * sech * sech - 2.0 * s * b * sech * tanh;
            assert_abs_diff_eq!(vs.eval(x).unwrap(), want, epsilon = 1e-13);
        }
    }

    #[test]
    fn chi_residual_examples() {
        let gp = pair(FamilyClass::OmegaNegative, 1.0, 0.0, PctMap::Artanh, unit());
        let g = grid(unit(), 801);
        let b = PotentialBundle::from_family(&gp, 0.5, 0.5).unwrap();
        let chi0 = ground_state(&gp, 0.5, &g).unwrap();
        let r = chi_equation_residual(&b.m, &b.v_s, &chi0, 0.5, &g).unwrap();
        assert!(r.relative() <= 1e-6, "{:e}", r.relative());

        let chi1 = ladder_apply(Direction::Raise, &chi0, &gp).unwrap();
        let v1 = vs_family(&gp, 1.5).unwrap();
        let r = chi_equation_residual(&b.m, &v1, &chi1, 0.5, &g).unwrap();
        assert!(r.relative() <= 1e-6, "{:e}", r.relative());

        let gp = pair(FamilyClass::OmegaNegative, 0.5, 0.0, PctMap::Identity, line());
        let g = grid(line(), 801);
        let b = PotentialBundle::from_family(&gp, 1.0, 1.0).unwrap();
        let chi0 = ground_state(&gp, 1.0, &g).unwrap();
        let r = chi_equation_residual(&b.m, &b.v_s, &chi0, 1.0, &g).unwrap();
        assert!(r.relative() <= 1e-6, "{:e}", r.relative());
        // The wrong eigenvalue is detected.
        let r = chi_equation_residual(&b.m, &b.v_s, &chi0, 0.5, &g).unwrap();
        assert!(r.relative() > 1e-2);
    }

    fn quarter_root(m: &ScalarProfile, st: &LadderState) -> ScalarProfile {
        m.powf(0.25) * st.chi()
    }

    #[test]
    fn psi_residual_examples() {
        let gp = pair(FamilyClass::OmegaNegative, 1.0, 0.0, PctMap::Artanh, unit());
        let g = grid(unit(), 801);
        let b = PotentialBundle::from_family(&gp, 0.5, 0.5).unwrap();
        let chi0 = ground_state(&gp, 0.5, &g).unwrap();
        let r = psi_equation_residual(&b.m, &b.v_s, &quarter_root(&b.m, &chi0), 0.5, &g).unwrap();
        assert!(r.relative() <= 1e-6, "{:e}", r.relative());
        let chi1 = first_excited(&gp, 0.5, &g).unwrap();
        let v1 = vs_family(&gp, 1.5).unwrap();
        let r = psi_equation_residual(&b.m, &v1, &quarter_root(&b.m, &chi1), 0.5, &g).unwrap();
        assert!(r.relative() <= 1e-6, "{:e}", r.relative());

        let gp = pair(FamilyClass::OmegaNegative, 0.5, 0.0, PctMap::Identity, line());
        let g = grid(line(), 401);
        let b = PotentialBundle::from_family(&gp, 1.0, 1.0).unwrap();
        let chi0 = ground_state(&gp, 1.0, &g).unwrap();
        let rc = chi_equation_residual(&b.m, &b.v_s, &chi0, 1.0, &g).unwrap();
        let rp = psi_equation_residual(&b.m, &b.v_s, chi0.chi(), 1.0, &g).unwrap();
        for (a, c) in rc.field.values().iter().zip(rp.field.values()) {
            assert!((a - c).abs() <= 1e-10);
        }
    }

    #[test]
    fn psi_form_is_chi_form_conjugated_by_quarter_power() {
        // For any trial function, r_psi(M^{1/4} f) = M^{1/4} r_chi(f).
        let gp = pair(FamilyClass::OmegaNegative, 1.0, 0.0, PctMap::Artanh, unit());
        let g = grid(unit(), 301);
        let b = PotentialBundle::from_family(&gp, 0.5, 0.5).unwrap();
        let trial = (ScalarProfile::identity(unit()) * 3.0).cos() + 0.2;
        let st = LadderState::new(trial.clone(), 0.8, 0.8).unwrap();
        let rc = chi_equation_residual(&b.m, &b.v_s, &st, 0.8, &g).unwrap();
        let rp = psi_equation_residual(&b.m, &b.v_s, &(b.m.powf(0.25) * &trial), 0.8, &g).unwrap();
        for ((x, a), c) in rc.field.iter().zip(rp.field.values()) {
            let q = b.m.eval(x).unwrap().powf(0.25);
            assert!((q * a - c).abs() <= 1e-8 * c.abs().max(1.0), "{x}");
        }
    }

    #[test]
    fn curvature_identity_examples() {
        let one = ScalarProfile::constant(line(), 1.0);
        let r = curvature_identity_residual(&one, &one, &grid(line(), 101)).unwrap();
        assert!(r.values().iter().all(|v| *v == 0.0));

        let xu = ScalarProfile::identity(unit());
        let vf = 1.0 - xu.square();
        let m = vf.powf(-2.0);
        let r = curvature_identity_residual(&m, &vf, &grid(unit(), 2001)).unwrap();
        assert!(r.sup_norm() <= 1e-9, "{:e}", r.sup_norm());

        let xo = ScalarProfile::identity(outer());
        let vf = xo.square() - 1.0;
        let m = vf.powf(-2.0);
        let g = Grid::uniform(2f64.sqrt(), 3.0, 16).unwrap();
        let r = curvature_identity_residual(&m, &vf, &g).unwrap();
        assert!(r.values()[0].abs() <= 1e-9);

        let bad = 1.0 - 0.5 * xu.square();
        let m = (1.0 - xu.square()).powf(-2.0);
        assert!(matches!(curvature_identity_residual(&m, &bad, &grid(unit(), 21)), Err(Error::LinkViolation { .. })));
    }

    fn riccati_triples() -> Vec<(GeneratorPair, Grid)> {
        let d_pos = Interval::new(0.3, 20.3, true, false).unwrap();
        vec![
            (pair(FamilyClass::OmegaNegative, 1.5, 0.3, PctMap::Identity, line()), grid(line(), 2001)),
            (pair(FamilyClass::OmegaZero(ZeroSign::Plus), 0.8, 0.3, PctMap::Identity, line()), grid(line(), 2001)),
            (pair(FamilyClass::OmegaPositive, -0.5, 0.3, PctMap::Identity, d_pos), grid(d_pos, 2001)),
            (pair(FamilyClass::OmegaNegative, 1.0, 0.0, PctMap::Artanh, unit()), grid(unit(), 2001)),
            (pair(FamilyClass::OmegaPositive, 1.0, 0.0, PctMap::Arccoth, outer()), grid(outer(), 2001)),
        ]
    }

    #[test]
    fn riccati_link_holds_only_at_half() {
        for (gp, g) in riccati_triples() {
            let b = PotentialBundle::from_family(&gp, 0.5, 0.5).unwrap();
            let w = b.w.clone().unwrap();
            let r = riccati_residual(&w, &b.v_f, &b.v_s, &g).unwrap();
            assert!(r.mixed() <= 1e-10, "{} {}: {:e}", gp.class, gp.sigma.label(), r.mixed());
            for k in [0.3, 0.8] {
                assert!(PotentialBundle::from_family(&gp, k, k).unwrap().w.is_none());
                let r = riccati_residual(&w, &b.v_f, &vs_family(&gp, k).unwrap(), &g).unwrap();
                assert!(r.sup() >= 1e-3, "{} k = {k}", gp.class);
            }
        }
    }

    #[test]
    fn riccati_closed_forms() {
        // W = sech x, v_f = 1.
        let gp = pair(FamilyClass::OmegaNegative, 1.0, 0.0, PctMap::Identity, line());
        let w = pseudoscalar(&gp);
        assert_abs_diff_eq!(w.eval(0.7).unwrap(), 1.0 / 0.7f64.cosh(), epsilon = 1e-15);
        // W = sqrt(1 - x^2), v_f = 1 - x^2, V_s = (1 - x^2) - x sqrt(1 - x^2).
        let xu = ScalarProfile::identity(unit());
        let w = (1.0 - xu.square()).sqrt();
        let vf = 1.0 - xu.square();
        let vs = (1.0 - xu.square()) - &xu * &w;
        let r = riccati_residual(&w, &vf, &vs, &grid(unit(), 2001)).unwrap();
        assert!(r.sup() <= 1e-10);
        // W = b e^{-(x - c)}: V_s = b^2 e^{-2(x-c)} - b e^{-(x-c)}.
        let (b, c) = (0.8, 0.3);
        let xl = ScalarProfile::identity(line());
        let e = (-(&xl - c)).exp();
        let vs = b * b * e.square() - b * &e;
        let gp = pair(FamilyClass::OmegaZero(ZeroSign::Plus), b, c, PctMap::Identity, line());
        let g = grid(line(), 401);
        let r = riccati_residual(&(b * &e), &ScalarProfile::constant(line(), 1.0), &vs, &g).unwrap();
        assert!(r.mixed() <= 1e-10);
        let family = vs_family(&gp, 0.5).unwrap();
        for &x in g.nodes() {
            let want = vs.eval(x).unwrap();
            assert!((family.eval(x).unwrap() - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn riccati_solve_recovers_closed_form() {
        let gp = pair(FamilyClass::OmegaNegative, 1.0, 0.0, PctMap::Artanh, unit());
        let b = PotentialBundle::from_family(&gp, 0.5, 0.5).unwrap();
        let g = Grid::uniform(-0.99, 0.99, 199).unwrap();
        let w = riccati_solve(&b.v_s, &b.v_f, 0.0, 1.0, &g).unwrap();
        for (x, v) in w.iter() {
            assert!((v - (1.0 - x * x).sqrt()).abs() <= 1e-7, "{x}: {v}");
        }
        let perturbed = riccati_solve(&b.v_s, &b.v_f, 0.0, 1.0 + 1e-3, &g).unwrap();
        let departure = perturbed.values().iter().zip(w.values()).map(|(a, c)| (a - c).abs()).fold(0.0, f64::max);
        assert!(departure > 1e-4 && departure.is_finite());
    }

    #[test]
    fn riccati_solve_zero_and_blow_up() {
        let d = Interval::closed(-5.0, 5.0).unwrap();
        let zero = ScalarProfile::constant(d, 0.0);
        let one = ScalarProfile::constant(d, 1.0);
        let g = Grid::uniform(-5.0, 5.0, 51).unwrap();
        let w = riccati_solve(&zero, &one, 0.0, 0.0, &g).unwrap();
        assert!(w.values().iter().all(|v| *v == 0.0));
        // W' = -W^2 with W(0) = -1 is 1/(x - 1): a pole at x = 1.
        let err = riccati_solve(&zero, &one, 0.0, -1.0, &g).unwrap_err();
        assert!(matches!(err, Error::BlowUp { x, .. } if (x - 1.0).abs() < 1e-3), "{err:?}");
        // Backward from the anchor the same data stays finite.
        let g = Grid::uniform(-5.0, 0.5, 23).unwrap();
        let w = riccati_solve(&zero, &one, 0.0, -1.0, &g).unwrap();
        for (x, v) in w.iter() {
            assert!((v - 1.0 / (x - 1.0)).abs() <= 1e-8 * v.abs().max(1.0));
        }
    }
}
