use num_complex::Complex64;

use super::model::DiracModel;
use super::spinor::{ComplexProfile, Spinor};
use crate::algebra::{GeneratorPair, LadderState};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::potentials::{is_half, PotentialBundle};
use crate::profiles::{Grid, ScalarProfile};
use crate::residual::Residual;

type C = Complex64;

fn require(p: &ScalarProfile, order: usize) -> Result<()> {
    if p.is_analytic() && p.order() < order {
        return Err(Error::InsufficientOrder { available: p.order(), required: order });
    }
    Ok(())
}

fn require_c(p: &ComplexProfile, order: usize) -> Result<()> {
    require(&p.re, order)?;
    require(&p.im, order)
}

/// `[f, f', f'']` of a complex profile at `x`.
fn cderivs(p: &ComplexProfile, x: f64) -> Result<[C; 3]> {
    let (re, im) = (p.re.jet(x)?, p.im.jet(x)?);
    Ok([0, 1, 2].map(|n| C::new(re.derivative(n), im.derivative(n))))
}

fn rderivs(p: &ScalarProfile, x: f64) -> Result<[f64; 3]> {
    let j = p.jet(x)?;
    Ok([j.value(), j.derivative(1), j.derivative(2)])
}

const I: C = C::new(0.0, 1.0);

/// `psi- = [-i sqrt(v_f) (sqrt(v_f) psi+)' + i W psi+] / (E + A)`.
pub fn lower_from_upper(psi_plus: &ComplexProfile, w: &ScalarProfile, v_f: &ScalarProfile, e: f64, a: f64) -> Result<ComplexProfile> {
    let d = e + a;
    if !(d.abs() >= 1e-12) {
        return Err(Error::SingularDenominator { x: f64::NAN, value: d });
    }
    require_c(psi_plus, 1)?;
    require(v_f, 1)?;
    let order = psi_plus.order().min(v_f.order()).min(w.order()) - 1;
    let domain = psi_plus.domain();
    // Y = (W - v_f'/2) psi - v_f psi'; psi- = i Y / D.
    let part = |take_re: bool| {
        let (p, w, v) = (psi_plus.clone(), w.clone(), v_f.clone());
        move |x: &Jet| {
            let (pr, pi) = p.apply(x);
            let (vj, wj) = (v.apply(x), w.apply(x));
            let coef = wj - vj.diff(x).scale(0.5);
            if take_re {
                // Re(i Y) = -Im Y.
                -(coef * pi - vj * pi.diff(x)).scale(1.0 / d)
            } else {
                (coef * pr - vj * pr.diff(x)).scale(1.0 / d)
            }
        }
    };
    Ok(ComplexProfile::new(
        ScalarProfile::from_jet_fn(domain, "Re psi-", order, part(true)),
        ScalarProfile::from_jet_fn(domain, "Im psi-", order, part(false)),
    ))
}

/// `(H_D - E) psi` componentwise on the grid: the first component is
/// `r1 = (-i sqrt(v_f) d sqrt(v_f) - i W) psi- - (E - m v_f^2) psi+`, the
/// second `r2 = (-i sqrt(v_f) d sqrt(v_f) + i W) psi+ - (E + m v_f^2) psi-`.
/// Node scales are the largest individual term magnitudes.
pub fn hamiltonian_residual(sp: &Spinor, model: &DiracModel, grid: &Grid) -> Result<(Residual<C>, Residual<C>)> {
    require_c(&sp.psi_plus, 1)?;
    require_c(&sp.psi_minus, 1)?;
    require(&model.v_f, 1)?;
    let e = sp.e;
    let n = grid.len();
    let (mut r1, mut r2, mut s1, mut s2) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for &x in grid.nodes() {
        let [p, p1, _] = cderivs(&sp.psi_plus, x)?;
        let [q, q1, _] = cderivs(&sp.psi_minus, x)?;
        let [v, v1, _] = rderivs(&model.v_f, x)?;
        let w = model.w.eval(x)?;
        let mv2 = model.m.eval(x)? * v * v;
        let (sq_a, sq_b) = (v * q1, 0.5 * v1 * q);
        let (sp_a, sp_b) = (v * p1, 0.5 * v1 * p);
        r1.push(-I * (sq_a + sq_b) - I * w * q - (e - mv2) * p);
        r2.push(-I * (sp_a + sp_b) + I * w * p - (e + mv2) * q);
        let big = |terms: &[f64]| terms.iter().fold(0.0f64, |m, t| m.max(*t));
        s1.push(big(&[sq_a.norm(), sq_b.norm(), (w * q).norm(), (e * p).norm(), (mv2 * p).norm()]));
        s2.push(big(&[sp_a.norm(), sp_b.norm(), (w * p).norm(), (e * q).norm(), (mv2 * q).norm()]));
    }
    Ok((Residual::new(grid, r1, s1)?, Residual::new(grid, r2, s2)?))
}

/// The coupled first-order equations; identical to [`hamiltonian_residual`].
pub fn coupled_residuals(sp: &Spinor, model: &DiracModel, grid: &Grid) -> Result<(Residual<C>, Residual<C>)> {
    hamiltonian_residual(sp, model, grid)
}

/// The second-order equation for the upper component with a general
/// `D+ = E + m v_f^2`:
///
/// `-(v_f^2/D+) psi'' - (v_f^2/D+)' psi' + [(W^2 - v_f'^2/4 - v_f v_f''/2)/D+
///  + v_f (W/D+)' - (v_f v_f'/2) (1/D+)'] psi - D- psi`.
pub fn decoupled_residual(psi_plus: &ComplexProfile, model: &DiracModel, e: f64, grid: &Grid) -> Result<Residual<C>> {
    require_c(psi_plus, 2)?;
    require(&model.v_f, 2)?;
    require(&model.m, 1)?;
    require(&model.w, 1)?;
    let n = grid.len();
    let (mut r, mut s) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for &x in grid.nodes() {
        let [p, p1, p2] = cderivs(psi_plus, x)?;
        let xj = Jet::variable(x);
        let (v, m, w) = (model.v_f.jet(x)?, model.m.jet(x)?, model.w.jet(x)?);
        let d_plus = m * v.square() + e;
        if !(d_plus.value().abs() >= 1e-12) {
            return Err(Error::SingularDenominator { x, value: d_plus.value() });
        }
        let d_minus = e - m.value() * v.value() * v.value();
        let inv = d_plus.recip();
        let q = v.square() * inv;
        let (v0, v1, v2) = (v.value(), v.derivative(1), v.derivative(2));
        let core = w.value() * w.value() - 0.25 * v1 * v1 - 0.5 * v0 * v2;
        let bracket = core * inv.value() + v0 * (w * inv).diff(&xj).value() - 0.5 * v0 * v1 * inv.diff(&xj).value();
        let t1 = -q.value() * p2;
        let t2 = -q.diff(&xj).value() * p1;
        let t3 = bracket * p;
        let t4 = d_minus * p;
        r.push(t1 + t2 + t3 - t4);
        s.push(t1.norm().max(t2.norm()).max(t3.norm()).max((e * p).norm()).max((e - d_minus).abs() * p.norm()));
    }
    Residual::new(grid, r, s)
}

/// `[-d/dx v_f^2 d/dx + (W^2 - v_f'^2/4 - v_f v_f''/2 + v_f W')] psi+ - (E^2 - A^2) psi+`.
pub fn reduced_residual(psi_plus: &ComplexProfile, w: &ScalarProfile, v_f: &ScalarProfile, a: f64, e: f64, grid: &Grid) -> Result<Residual<C>> {
    require_c(psi_plus, 2)?;
    require(v_f, 2)?;
    require(w, 1)?;
    let lambda = e * e - a * a;
    let n = grid.len();
    let (mut r, mut s) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for &x in grid.nodes() {
        let [p, p1, p2] = cderivs(psi_plus, x)?;
        let [v, v1, v2] = rderivs(v_f, x)?;
        let wj = w.jet(x)?;
        let (w0, w1) = (wj.value(), wj.derivative(1));
        let terms = [
            -v * v * p2,
            -2.0 * v * v1 * p1,
            w0 * w0 * p,
            -0.25 * v1 * v1 * p,
            -0.5 * v * v2 * p,
            v * w1 * p,
            -lambda * p,
        ];
        r.push(terms.iter().sum());
        s.push(terms.iter().map(|t| t.norm()).fold(0.0, f64::max));
    }
    Residual::new(grid, r, s)
}

/// A constructed eigen-spinor with its model and the residual of
/// `H_D psi = E psi`.
#[derive(Clone, Debug)]
pub struct EigenSpinor {
    pub spinor: Spinor,
    pub model: DiracModel,
    pub bundle: PotentialBundle,
    pub residual: (Residual<C>, Residual<C>),
}

/// Builds the Dirac eigen-spinor attached to a `k = s = 1/2` state.
///
/// The positive branch `E = +A` takes `psi+ = M^{1/4} chi` and `psi-` from the
/// lower-component equation. On the negative branch `E + A = 0`, so that
/// equation no longer fixes `psi-`; the eigenvector there is
/// `(0, i M^{1/4}/chi)`, the zero mode of the adjoint first-order operator.
pub fn build_eigen_spinor(st: &LadderState, gp: &GeneratorPair, a: f64, sign: i8, grid: &Grid) -> Result<EigenSpinor> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParam(format!("A = {a} must be a positive finite constant")));
    }
    let gap = (st.k() - 0.5).powi(2);
    if a * a < gap {
        return Err(Error::ComplexEnergy { a_squared: a * a, gap });
    }
    if !is_half(st.k()) || !is_half(st.s()) {
        return Err(Error::InvalidParam(format!(
            "only k = s = 1/2 states are Dirac eigenfunctions of the linked model (got k = {}, s = {})",
            st.k(),
            st.s()
        )));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParam(format!("energy branch sign must be +1 or -1, got {sign}")));
    }
    let bundle = PotentialBundle::from_family(gp, st.k(), st.s())?;
    let w = bundle.w.clone().expect("k = 1/2 bundle carries W");
    let e = f64::from(sign) * (a * a - gap).sqrt();
    let quarter = bundle.m.powf(0.25);
    let domain = *st.chi().domain();
    let spinor = if sign > 0 {
        let plus = ComplexProfile::real((&quarter * st.chi()).with_label("psi+ = M^{1/4} chi"));
        let minus = lower_from_upper(&plus, &w, &bundle.v_f, e, a)?;
        Spinor::new(plus, minus, e)
    } else {
        let minus = ComplexProfile::imaginary((&quarter / st.chi()).with_label("Im psi- = M^{1/4}/chi"));
        Spinor::new(ComplexProfile::zero(domain), minus, e)
    };
    let model = DiracModel::with_constancy(bundle.v_f.clone(), w, a, st.k())?;
    let residual = hamiltonian_residual(&spinor, &model, grid)?;
    Ok(EigenSpinor { spinor, model, bundle, residual })
}
