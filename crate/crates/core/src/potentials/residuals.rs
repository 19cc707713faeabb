use crate::algebra::LadderState;
use crate::error::{Error, Result};
use crate::profiles::{Grid, SampledField, ScalarProfile};
use crate::residual::Residual;

/// `[f, f', f'']` at `x`: exact for analytic profiles, spline derivatives for
/// sampled ones.
pub(crate) fn derivs(p: &ScalarProfile, x: f64) -> Result<[f64; 3]> {
    if p.is_analytic() && p.order() < 2 {
        return Err(Error::InsufficientOrder { available: p.order(), required: 2 });
    }
    let j = p.jet(x)?;
    Ok([j.value(), j.derivative(1), j.derivative(2)])
}

/// `eps_k = -(k - 1/2)^2`.
pub fn eigenvalue(k: f64) -> f64 {
    0.0 - (k - 0.5) * (k - 0.5)
}

/// `[-(1/sqrt M) d/dx (1/sqrt M) d/dx + V_s] chi - eps_k chi`.
///
/// The scale at each node is `max(|V_s chi|, |chi''/M|)`, so
/// [`Residual::relative`] is the sup-norm relative to the problem scale.
pub fn chi_equation_residual(m: &ScalarProfile, v_s: &ScalarProfile, st: &LadderState, k: f64, grid: &Grid) -> Result<Residual> {
    let eps = eigenvalue(k);
    let mut r = Vec::with_capacity(grid.len());
    let mut scale = Vec::with_capacity(grid.len());
    for &x in grid.nodes() {
        let [c, c1, c2] = derivs(st.chi(), x)?;
        let [mv, m1, _] = derivs(m, x)?;
        let v = v_s.eval(x)?;
        let kinetic = -c2 / mv + 0.5 * c1 * m1 / (mv * mv);
        r.push(kinetic + v * c - eps * c);
        scale.push((v * c).abs().max((c2 / mv).abs()));
    }
    Residual::new(grid, r, scale)
}

/// `[-d/dx (1/M) d/dx + M''/(4M^2) - 7M'^2/(16M^3) + V_s] psi - eps_k psi`,
/// the equation satisfied by `psi = M^{1/4} chi`.
pub fn psi_equation_residual(m: &ScalarProfile, v_s: &ScalarProfile, psi: &ScalarProfile, k: f64, grid: &Grid) -> Result<Residual> {
    let eps = eigenvalue(k);
    let mut r = Vec::with_capacity(grid.len());
    let mut scale = Vec::with_capacity(grid.len());
    for &x in grid.nodes() {
        let [p, p1, p2] = derivs(psi, x)?;
        let [mv, m1, m2] = derivs(m, x)?;
        let v = v_s.eval(x)?;
        let kinetic = -p2 / mv + p1 * m1 / (mv * mv);
        let curvature = m2 / (4.0 * mv * mv) - 7.0 * m1 * m1 / (16.0 * mv * mv * mv);
        r.push(kinetic + (curvature + v - eps) * p);
        scale.push((v * p).abs().max((p2 / mv).abs()));
    }
    Residual::new(grid, r, scale)
}

/// `[M''/(4M^2) - 7M'^2/(16M^3)] - [-v_f'^2/4 - v_f v_f''/2]`, after checking
/// `|v_f^2 M - 1| <= 1e-8` at every node.
pub fn curvature_identity_residual(m: &ScalarProfile, v_f: &ScalarProfile, grid: &Grid) -> Result<SampledField> {
    grid.sample(|x| {
        let [mv, m1, m2] = derivs(m, x)?;
        let [v, v1, v2] = derivs(v_f, x)?;
        let deviation = (v * v * mv - 1.0).abs();
        if !(deviation <= 1e-8) {
            return Err(Error::LinkViolation { x, deviation });
        }
        let lhs = m2 / (4.0 * mv * mv) - 7.0 * m1 * m1 / (16.0 * mv * mv * mv);
        let rhs = -0.25 * v1 * v1 - 0.5 * v * v2;
        Ok(lhs - rhs)
    })
}

/// `W^2 + v_f W' - V_s`, with node scale `max(W^2, |v_f W'|, |V_s|)`.
pub fn riccati_residual(w: &ScalarProfile, v_f: &ScalarProfile, v_s: &ScalarProfile, grid: &Grid) -> Result<Residual> {
    let mut r = Vec::with_capacity(grid.len());
    let mut scale = Vec::with_capacity(grid.len());
    for &x in grid.nodes() {
        let wv = w.eval(x)?;
        let w1 = w.derivative(x, 1)?;
        let (v, target) = (v_f.eval(x)?, v_s.eval(x)?);
        r.push(wv * wv + v * w1 - target);
        scale.push((wv * wv).max((v * w1).abs()).max(target.abs()));
    }
    Residual::new(grid, r, scale)
}
