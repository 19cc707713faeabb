use crate::error::{Error, Result};
use crate::profiles::{Grid, SampledField, ScalarProfile};

/// Controls for [`riccati_solve_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiccatiOptions {
    /// Local error tolerance per step, mixed absolute/relative.
    pub tol: f64,
    /// `|W|` beyond which the solution is declared to blow up.
    pub bound: f64,
    pub max_steps: usize,
}

impl Default for RiccatiOptions {
    fn default() -> Self {
        RiccatiOptions { tol: 1e-10, bound: 1e8, max_steps: 1_000_000 }
    }
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// Integrates the scalar ODE `y' = f(x, y)` from `(x, y)` to `x_end` with
/// adaptive Dormand-Prince steps. `h` carries the step size between calls.
fn dopri5(
    f: &impl Fn(f64, f64) -> Result<f64>,
    mut x: f64,
    mut y: f64,
    x_end: f64,
    h: &mut f64,
    opts: &RiccatiOptions,
    steps: &mut usize,
) -> Result<f64> {
    let dir = (x_end - x).signum();
    if dir == 0.0 {
        return Ok(y);
    }
    let span = (x_end - x).abs();
    let h_min = 1e-14 * x.abs().max(x_end.abs()).max(1.0);
    let mut hh = h.abs().min(span).max(h_min);
    loop {
        let remaining = (x_end - x).abs();
        if remaining <= 1e-15 * x_end.abs().max(1.0) {
            return Ok(y);
        }
        let last = hh >= remaining;
        let step = if last { remaining } else { hh };
        let mut k = [0.0; 7];
        for i in 0..7 {
            let yi = y + dir * step * (0..i).map(|j| A[i][j] * k[j]).sum::<f64>();
            k[i] = f(x + dir * C[i] * step, yi)?;
        }
        let y5 = y + dir * step * (0..7).map(|i| B5[i] * k[i]).sum::<f64>();
        let y4 = y + dir * step * (0..7).map(|i| B4[i] * k[i]).sum::<f64>();
        let sc = opts.tol * (1.0 + y.abs().max(y5.abs()));
        let err = if y5.is_finite() && y4.is_finite() { ((y5 - y4).abs() / sc).max(1e-300) } else { f64::INFINITY };
        *steps += 1;
        if *steps > opts.max_steps {
            return Err(Error::NonConvergence {
                what: "Riccati integration",
                detail: format!("step budget {} exhausted near x = {x}", opts.max_steps),
            });
        }
        if err <= 1.0 && y5.abs() > opts.bound {
            return Err(Error::BlowUp { x: x + dir * step, bound: opts.bound });
        }
        let factor = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
        if err <= 1.0 {
            x = if last { x_end } else { x + dir * step };
            y = y5;
            if !last {
                hh = step * factor;
            }
            *h = step * factor;
            if last {
                return Ok(y);
            }
        } else {
            hh = step * factor;
            if hh < h_min {
                return Err(Error::NonConvergence { what: "Riccati integration", detail: format!("step size underflow at x = {x}") });
            }
        }
    }
}

/// Solves `W' = (V_s - W^2) / v_f` outward from the interior anchor
/// `(x0, W0)` to every grid node, with default [`RiccatiOptions`].
pub fn riccati_solve(v_s: &ScalarProfile, v_f: &ScalarProfile, x0: f64, w0: f64, grid: &Grid) -> Result<SampledField> {
    riccati_solve_with(v_s, v_f, x0, w0, grid, &RiccatiOptions::default())
}

pub fn riccati_solve_with(
    v_s: &ScalarProfile,
    v_f: &ScalarProfile,
    x0: f64,
    w0: f64,
    grid: &Grid,
    opts: &RiccatiOptions,
) -> Result<SampledField> {
    if x0 < grid.first() || x0 > grid.last() {
        return Err(Error::OutOfDomain { x: x0, domain: format!("[{}, {}]", grid.first(), grid.last()) });
    }
    v_s.domain().check(x0)?;
    v_f.domain().check(x0)?;
    for &x in grid.nodes() {
        let v = v_f.eval(x)?;
        if !(v > 0.0) {
            return Err(Error::InvalidParam(format!("v_f({x}) = {v} must be positive")));
        }
    }
    let rhs = |x: f64, w: f64| -> Result<f64> { Ok((v_s.value_unchecked(x) - w * w) / v_f.value_unchecked(x)) };
    let nodes = grid.nodes();
    let split = nodes.partition_point(|&v| v < x0);
    let mut values = vec![0.0; nodes.len()];
    let mut steps = 0;
    let h0 = grid.step().min(1e-3);
    for (range, h_init) in [((split..nodes.len()).collect::<Vec<_>>(), h0), ((0..split).rev().collect::<Vec<_>>(), h0)] {
        let (mut x, mut w, mut h) = (x0, w0, h_init);
        for i in range {
            w = dopri5(&rhs, x, w, nodes[i], &mut h, opts, &mut steps)?;
            x = nodes[i];
            values[i] = w;
        }
    }
    SampledField::new(grid.clone(), values)
}
