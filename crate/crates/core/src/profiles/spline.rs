//! Natural cubic spline through sampled data.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    // second derivatives at the knots
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 3 || y.len() != n {
            return Err(Error::InvalidParam(format!("spline needs >= 3 matching knots, got {n}/{}", y.len())));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParam("spline knots must be strictly increasing".into()));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParam("spline values must be finite".into()));
        }
        // Tridiagonal system for the interior second derivatives (Thomas sweep).
        let mut m = vec![0.0; n];
        let mut c_prime = vec![0.0; n];
        let mut d_prime = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            let a = h0;
            let b = 2.0 * (h0 + h1);
            let c = h1;
            let d = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            let den = b - a * c_prime[i - 1];
            c_prime[i] = c / den;
            d_prime[i] = (d - a * d_prime[i - 1]) / den;
        }
        for i in (1..n - 1).rev() {
            m[i] = d_prime[i] - c_prime[i] * m[i + 1];
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn span(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Value and first three derivatives of the interpolant at `t`.
    pub fn eval_all(&self, t: f64) -> [f64; 4] {
        let n = self.x.len();
        let i = match self.x.partition_point(|&v| v <= t) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let v = a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let d1 = (y1 - y0) / h + ((1.0 - 3.0 * a * a) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        let d2 = a * m0 + b * m1;
        let d3 = (m1 - m0) / h;
        [v, d1, d2, d3]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn interpolates_knots_and_linear_data_exactly() {
        let x: Vec<f64> = (0..10).map(|i| i as f64 * 0.3).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v - 1.0).collect();
        let s = CubicSpline::new(x.clone(), y.clone()).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert_abs_diff_eq!(s.eval_all(*xi)[0], *yi, epsilon = 1e-14);
        }
        let [v, d1, d2, _] = s.eval_all(1.05);
        assert_abs_diff_eq!(v, 1.1, epsilon = 1e-14);
        assert_abs_diff_eq!(d1, 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(d2, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn smooth_data_converges() {
        let x: Vec<f64> = (0..201).map(|i| i as f64 * 0.01).collect();
        let y: Vec<f64> = x.iter().map(|v| v.sin()).collect();
        let s = CubicSpline::new(x, y).unwrap();
        assert_abs_diff_eq!(s.eval_all(1.003)[0], 1.003f64.sin(), epsilon = 1e-8);
        assert_abs_diff_eq!(s.eval_all(1.003)[1], 1.003f64.cos(), epsilon = 1e-5);
    }
}
