use crate::algebra::GeneratorPair;
use crate::error::{Error, Result};
use crate::potentials::vs_family;
use crate::profiles::{Grid, Interval, ScalarProfile};

/// Minimum number of interior nodes accepted by [`discretize`].
pub const MIN_OPERATOR_NODES: usize = 100;

/// `-d^2/du^2 + V(u)` on the interior nodes of a uniform `u` grid with
/// Dirichlet ends: a symmetric tridiagonal matrix.
#[derive(Clone, Debug)]
pub struct DiscretizedOperator {
    u_grid: Grid,
    /// `x(u_i)` when the operator came from a family, else `u_i`.
    x_nodes: Vec<f64>,
    diagonal: Vec<f64>,
    off_diagonal: f64,
    potential: Vec<f64>,
}

impl DiscretizedOperator {
    /// Second-difference operator with step `h = (u_hi - u_lo)/(n + 1)` and
    /// potential `v` sampled at the `n` interior nodes.
    pub fn from_potential(u_lo: f64, u_hi: f64, n: usize, v: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let (u_grid, _) = interior_grid(u_lo, u_hi, n)?;
        let potential = u_grid.nodes().iter().map(|&u| v(u)).collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(u_grid.clone(), u_grid.nodes().to_vec(), potential))
    }

    fn assemble(u_grid: Grid, x_nodes: Vec<f64>, potential: Vec<f64>) -> Self {
        let h = u_grid.step();
        let diagonal = potential.iter().map(|v| 2.0 / (h * h) + v).collect();
        DiscretizedOperator { u_grid, x_nodes, diagonal, off_diagonal: -1.0 / (h * h), potential }
    }

    pub fn u_grid(&self) -> &Grid {
        &self.u_grid
    }

    pub fn x_nodes(&self) -> &[f64] {
        &self.x_nodes
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    /// The constant off-diagonal entry `-1/h^2`.
    pub fn off_diagonal(&self) -> f64 {
        self.off_diagonal
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    pub fn step(&self) -> f64 {
        self.u_grid.step()
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// `T v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = v.len();
        let b = self.off_diagonal;
        (0..n)
            .map(|i| {
                let mut y = self.diagonal[i] * v[i];
                if i > 0 {
                    y += b * v[i - 1];
                }
                if i + 1 < n {
                    y += b * v[i + 1];
                }
                y
            })
            .collect()
    }
}

fn interior_grid(u_lo: f64, u_hi: f64, n: usize) -> Result<(Grid, f64)> {
    if !(u_lo < u_hi) || !u_lo.is_finite() || !u_hi.is_finite() {
        return Err(Error::InvalidParam(format!("u range [{u_lo}, {u_hi}] must be finite and increasing")));
    }
    let h = (u_hi - u_lo) / (n + 1) as f64;
    Ok((Grid::uniform(u_lo + h, u_hi - h, n)?, h))
}

/// Solves `u(x) = target` for `x` in `domain` by bisection; `u` must be
/// strictly monotone there. Infinite values at open ends are allowed.
pub fn invert_map(u: &ScalarProfile, domain: &Interval, target: f64) -> Result<f64> {
    let fail = || Error::InversionFailure { u: target };
    if !domain.lo.is_finite() || !domain.hi.is_finite() || !target.is_finite() {
        return Err(fail());
    }
    let g = |x: f64| u.value_unchecked(x) - target;
    let inward = |end: f64, other: f64, open: bool| {
        let mut x = if open { end + (other - end) * 1e-16 } else { end };
        let mut gx = g(x);
        let mut tries = 0;
        while gx.is_nan() && tries < 40 {
            x += (other - x) * 1e-12 * 4f64.powi(tries);
            gx = g(x);
            tries += 1;
        }
        (x, gx)
    };
    let (mut a, mut fa) = inward(domain.lo, domain.hi, domain.open_lo);
    let (mut b, fb) = inward(domain.hi, domain.lo, domain.open_hi);
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() && fa != 0.0 && fb != 0.0 {
        return Err(fail());
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = g(m);
        if fm.is_nan() {
            return Err(fail());
        }
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let x = if g(a).abs() <= g(b).abs() { a } else { b };
    if !(g(x).abs() <= 1e-8 * target.abs().max(1.0)) {
        return Err(fail());
    }
    Ok(x)
}

/// `-d^2/du^2 + V_s(x(u))` on `n` interior nodes of `u_range`, with `x(u)`
/// found by inverting the family's map numerically.
pub fn discretize(gp: &GeneratorPair, s: f64, u_range: (f64, f64), n: usize) -> Result<DiscretizedOperator> {
    if n < MIN_OPERATOR_NODES {
        return Err(Error::InvalidParam(format!("n = {n} is below the minimum of {MIN_OPERATOR_NODES} nodes")));
    }
    let vs = vs_family(gp, s)?;
    let u = &gp.u;
    let domain = *u.domain();
    let (u_grid, _) = interior_grid(u_range.0, u_range.1, n)?;
    let mut x_nodes = Vec::with_capacity(n);
    let mut potential = Vec::with_capacity(n);
    for &ui in u_grid.nodes() {
        let x = invert_map(u, &domain, ui)?;
        if !domain.contains(x) {
            return Err(Error::InversionFailure { u: ui });
        }
        x_nodes.push(x);
        potential.push(vs.value_unchecked(x));
    }
    if potential.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParam("potential is not finite on the u range".into()));
    }
    Ok(DiscretizedOperator::assemble(u_grid, x_nodes, potential))
}
