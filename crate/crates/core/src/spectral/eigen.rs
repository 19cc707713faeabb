use super::operator::DiscretizedOperator;
use crate::error::{Error, Result};
use crate::profiles::SampledField;

/// Largest number of eigenpairs [`eigen_lowest`] computes.
pub const MAX_EIGENPAIRS: usize = 10;

/// Residual bound `||T v - lambda v||` for a unit eigenvector.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-8;

/// The lowest eigenpairs of a discretized operator, in increasing order.
#[derive(Clone, Debug)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    /// Unit 2-norm eigenvectors on the operator's `u` grid, with the largest
    /// component positive.
    pub eigenvectors: Vec<SampledField>,
    /// `||T v - lambda v||_2` for each pair.
    pub residual_norms: Vec<f64>,
}

/// Number of eigenvalues of `T` strictly below `x` (Sturm count of the
/// `LDL^T` pivots of `T - x`).
pub fn sturm_count(op: &DiscretizedOperator, x: f64) -> usize {
    let b2 = op.off_diagonal() * op.off_diagonal();
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut d = 1.0;
    for (i, &a) in op.diagonal().iter().enumerate() {
        d = a - x - if i == 0 { 0.0 } else { b2 / d };
        if d == 0.0 {
            d = -tiny;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(op: &DiscretizedOperator) -> (f64, f64) {
    let r = 2.0 * op.off_diagonal().abs();
    let lo = op.diagonal().iter().fold(f64::INFINITY, |m, &a| m.min(a - r));
    let hi = op.diagonal().iter().fold(f64::NEG_INFINITY, |m, &a| m.max(a + r));
    (lo, hi)
}

/// The `index`-th smallest eigenvalue (from 0) by bisection on the Sturm count.
fn bisect_eigenvalue(op: &DiscretizedOperator, index: usize, lo: f64, hi: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    while b - a > 2.0 * f64::EPSILON * a.abs().max(b.abs()) {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if sturm_count(op, m) > index {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

/// Solves `(T - shift) y = rhs` by Gaussian elimination with partial pivoting.
fn shifted_solve(op: &DiscretizedOperator, shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let b = op.off_diagonal();
    let tiny = f64::EPSILON * gershgorin(op).1.abs().max(1.0);
    // Row i after elimination: u0[i] x_i + u1[i] x_{i+1} + u2[i] x_{i+2} = y_i.
    let (mut u0, mut u1, mut u2) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut y = rhs.to_vec();
    // Current row carried forward (coefficients of x_i, x_{i+1}).
    let (mut c0, mut c1) = (op.diagonal()[0] - shift, if n > 1 { b } else { 0.0 });
    let mut c2 = 0.0;
    for i in 0..n {
        if i + 1 == n {
            u0[i] = if c0 == 0.0 { tiny } else { c0 };
            break;
        }
        // Next original row: b x_i + (a - shift) x_{i+1} + b x_{i+2}.
        let (n0, n1, n2) = (b, op.diagonal()[i + 1] - shift, if i + 2 < n { b } else { 0.0 });
        if n0.abs() > c0.abs() {
            // Swap carried row with the next one.
            u0[i] = n0;
            u1[i] = n1;
            u2[i] = n2;
            y.swap(i, i + 1);
            let l = c0 / n0;
            c0 = c1 - l * n1;
            c1 = c2 - l * n2;
            y[i + 1] -= l * y[i];
        } else {
            let p = if c0 == 0.0 { tiny } else { c0 };
            u0[i] = p;
            u1[i] = c1;
            u2[i] = c2;
            let l = n0 / p;
            c0 = n1 - l * c1;
            c1 = n2 - l * c2;
            y[i + 1] -= l * y[i];
        }
        c2 = 0.0;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut v = y[i];
        if i + 1 < n {
            v -= u1[i] * x[i + 1];
        }
        if i + 2 < n {
            v -= u2[i] * x[i + 2];
        }
        x[i] = v / u0[i];
    }
    x
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

fn residual_norm(op: &DiscretizedOperator, lambda: f64, v: &[f64]) -> f64 {
    op.apply(v).iter().zip(v).map(|(tv, x)| (tv - lambda * x).powi(2)).sum::<f64>().sqrt()
}

/// The `count` lowest eigenpairs: eigenvalues by Sturm bisection, vectors by
/// inverse iteration (orthogonalized against earlier ones for close pairs).
pub fn eigen_lowest(op: &DiscretizedOperator, count: usize) -> Result<EigenResult> {
    if count == 0 || count > MAX_EIGENPAIRS {
        return Err(Error::InvalidParam(format!("eigenpair count {count} must be in 1..={MAX_EIGENPAIRS}")));
    }
    let n = op.len();
    if count > n {
        return Err(Error::InvalidParam(format!("{count} eigenpairs requested from a {n}x{n} operator")));
    }
    let (lo, hi) = gershgorin(op);
    let scale = lo.abs().max(hi.abs()).max(1.0);
    let mut eigenvalues = Vec::with_capacity(count);
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(count);
    let mut residual_norms = Vec::with_capacity(count);
    for index in 0..count {
        let lambda = bisect_eigenvalue(op, index, lo, hi);
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7 + index * 13) % 17) as f64 / 17.0).collect();
        normalize(&mut v);
        let shift = lambda + scale * f64::EPSILON * 4.0;
        let mut res = f64::INFINITY;
        for _ in 0..8 {
            v = shifted_solve(op, shift, &v);
            for w in &vectors {
                let dot: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(w).for_each(|(a, b)| *a -= dot * b);
            }
            if !(normalize(&mut v) > 0.0) || v.iter().any(|x| !x.is_finite()) {
                return Err(Error::ConvergenceFailure(format!("inverse iteration broke down for eigenvalue {index}")));
            }
            res = residual_norm(op, lambda, &v);
            if res <= EIGEN_RESIDUAL_TOL {
                break;
            }
        }
        if !(res <= EIGEN_RESIDUAL_TOL) {
            return Err(Error::ConvergenceFailure(format!(
                "eigenvector {index} residual {res:e} above {EIGEN_RESIDUAL_TOL:e}"
            )));
        }
        let peak = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        if peak < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        eigenvalues.push(lambda);
        residual_norms.push(res);
        vectors.push(v);
    }
    let eigenvectors =
        vectors.into_iter().map(|v| SampledField::new(op.u_grid().clone(), v)).collect::<Result<Vec<_>>>()?;
    Ok(EigenResult { eigenvalues, eigenvectors, residual_norms })
}
