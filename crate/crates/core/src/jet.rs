//! Truncated Taylor arithmetic.
//!
//! A [`Jet`] holds the normalized Taylor coefficients `f(x0), f'(x0), f''(x0)/2!, ...`
//! of a function around a point. Arithmetic and the elementary functions below
//! propagate all coefficients exactly (up to round-off), so every profile built
//! from them carries analytic derivatives up to [`JET_ORDER`].
//!
//! Elementary functions `g = f(u)` are obtained from the first-order relation
//! `g' = f'(u) u'`: when `f'(u)` can be expressed through `g` itself
//! (`exp`, `tanh`, `sech`, ...) the coefficients are generated one at a time,
//! otherwise `f'(u)` is computed as a jet first and integrated termwise.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Highest derivative order carried by a [`Jet`].
pub const JET_ORDER: usize = 5;
const LEN: usize = JET_ORDER + 1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [f64; LEN],
}

impl Default for Jet {
    fn default() -> Self {
        Jet::constant(0.0)
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = v;
        Jet { c }
    }

    /// The independent variable seeded at `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = x0;
        c[1] = 1.0;
        Jet { c }
    }

    pub fn from_coeffs(c: [f64; LEN]) -> Self {
        Jet { c }
    }

    pub fn coeffs(&self) -> &[f64; LEN] {
        &self.c
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `n`-th derivative at the expansion point.
    pub fn derivative(&self, n: usize) -> f64 {
        assert!(n <= JET_ORDER, "derivative order {n} exceeds JET_ORDER");
        self.c[n] * factorial(n)
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    /// Derivative series with respect to the expansion variable.
    ///
    /// The top coefficient becomes zero, so the result is exact only up to
    /// order `JET_ORDER - 1`.
    pub fn d(&self) -> Jet {
        let mut c = [0.0; LEN];
        for k in 0..JET_ORDER {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c }
    }

    /// Derivative with respect to the variable behind the input jet `x`:
    /// `self` and `x` are both series in the same expansion parameter.
    pub fn diff(&self, x: &Jet) -> Jet {
        self.d() / x.d()
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut c = self.c;
        c.iter_mut().for_each(|v| *v *= s);
        Jet { c }
    }

    pub fn recip(&self) -> Jet {
        Jet::constant(1.0) / *self
    }

    pub fn square(&self) -> Jet {
        *self * *self
    }

    /// Evaluates the Taylor polynomial `sum t_k y^k` at `y = delta`, where
    /// `delta` has zero constant term. Used to re-expand a series computed at
    /// a point along an arbitrary inner jet.
    pub fn compose_series(taylor: &[f64; LEN], delta: &Jet) -> Jet {
        debug_assert!(delta.c[0] == 0.0);
        let mut r = Jet::constant(taylor[JET_ORDER]);
        for k in (0..JET_ORDER).rev() {
            r = r * *delta + Jet::constant(taylor[k]);
        }
        r
    }

    // g' = h(g) u', generated coefficient by coefficient.
    fn integrate_relation(&self, g0: f64, rhs: impl Fn(&Jet) -> Jet) -> Jet {
        let du = self.d();
        let mut g = Jet::constant(g0);
        for k in 0..JET_ORDER {
            let h = rhs(&g) * du;
            g.c[k + 1] = h.c[k] / (k + 1) as f64;
        }
        g
    }

    pub fn exp(&self) -> Jet {
        self.integrate_relation(self.c[0].exp(), |g| *g)
    }

    pub fn ln(&self) -> Jet {
        let h = self.recip();
        self.integrate_relation(self.c[0].ln(), |_| h)
    }

    /// `self^n` by repeated squaring; valid at a zero base.
    pub fn powi(&self, n: i32) -> Jet {
        let mut base = if n < 0 { self.recip() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Jet::constant(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `self^a`. Integer exponents accept negative and zero bases.
    pub fn powf(&self, a: f64) -> Jet {
        if a.fract() == 0.0 && a.abs() <= 64.0 {
            return self.powi(a as i32);
        }
        let u = &self.c;
        let mut g = [0.0; LEN];
        g[0] = u[0].powf(a);
        for k in 1..LEN {
            let mut acc = 0.0;
            for j in 0..k {
                acc += (a * (k - j) as f64 - j as f64) * u[k - j] * g[j];
            }
            g[k] = acc / (k as f64 * u[0]);
        }
        Jet { c: g }
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    fn sin_cos(&self) -> (Jet, Jet) {
        let du = self.d();
        let mut s = Jet::constant(self.c[0].sin());
        let mut c = Jet::constant(self.c[0].cos());
        for k in 0..JET_ORDER {
            let ds = c * du;
            let dc = s * du;
            s.c[k + 1] = ds.c[k] / (k + 1) as f64;
            c.c[k + 1] = -dc.c[k] / (k + 1) as f64;
        }
        (s, c)
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    fn sinh_cosh(&self) -> (Jet, Jet) {
        let du = self.d();
        let mut s = Jet::constant(self.c[0].sinh());
        let mut c = Jet::constant(self.c[0].cosh());
        for k in 0..JET_ORDER {
            let ds = c * du;
            let dc = s * du;
            s.c[k + 1] = ds.c[k] / (k + 1) as f64;
            c.c[k + 1] = dc.c[k] / (k + 1) as f64;
        }
        (s, c)
    }

    pub fn sinh(&self) -> Jet {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Jet {
        self.sinh_cosh().1
    }

    pub fn tanh(&self) -> Jet {
        self.integrate_relation(self.c[0].tanh(), |g| Jet::constant(1.0) - g.square())
    }

    pub fn coth(&self) -> Jet {
        self.integrate_relation(1.0 / self.c[0].tanh(), |g| Jet::constant(1.0) - g.square())
    }

    pub fn sech(&self) -> Jet {
        let t = self.tanh();
        self.integrate_relation(1.0 / self.c[0].cosh(), |g| -(*g * t))
    }

    pub fn csch(&self) -> Jet {
        let ct = self.coth();
        self.integrate_relation(1.0 / self.c[0].sinh(), |g| -(*g * ct))
    }

    pub fn atan(&self) -> Jet {
        let h = (Jet::constant(1.0) + self.square()).recip();
        self.integrate_relation(self.c[0].atan(), |_| h)
    }

    pub fn atanh(&self) -> Jet {
        let h = (Jet::constant(1.0) - self.square()).recip();
        self.integrate_relation(self.c[0].atanh(), |_| h)
    }

    /// Inverse hyperbolic cotangent, defined for `|x| > 1`.
    pub fn acoth(&self) -> Jet {
        let x = self.c[0];
        let h = (Jet::constant(1.0) - self.square()).recip();
        self.integrate_relation(0.5 * ((x + 1.0) / (x - 1.0)).ln(), |_| h)
    }

    pub fn asin(&self) -> Jet {
        let h = (Jet::constant(1.0) - self.square()).powf(-0.5);
        self.integrate_relation(self.c[0].asin(), |_| h)
    }

    pub fn acosh(&self) -> Jet {
        let h = (self.square() - Jet::constant(1.0)).powf(-0.5);
        self.integrate_relation(self.c[0].acosh(), |_| h)
    }

    /// Gudermannian `gd(x) = 2 atan(tanh(x/2))`, the antiderivative of `sech`.
    pub fn gd(&self) -> Jet {
        let h = self.sech();
        self.integrate_relation(2.0 * (0.5 * self.c[0]).tanh().atan(), |_| h)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        self.c.iter_mut().zip(rhs.c).for_each(|(a, b)| *a += b);
        self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        self.c.iter_mut().zip(rhs.c).for_each(|(a, b)| *a -= b);
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; LEN];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in rhs.c.iter().enumerate().take(LEN - i) {
                c[i + j] += a * b;
            }
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let mut q = [0.0; LEN];
        for k in 0..LEN {
            let mut acc = self.c[k];
            for j in 0..k {
                acc -= q[j] * rhs.c[k - j];
            }
            q[k] = acc / rhs.c[0];
        }
        Jet { c: q }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.c[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self.scale(1.0 / rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Central differences of an f64 function, used as an independent check.
    fn fd1(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let h = 1e-5;
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    fn fd2(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let h = 1e-4;
        (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    }

    fn check(jf: impl Fn(Jet) -> Jet, f: impl Fn(f64) -> f64 + Copy, x: f64) {
        let j = jf(Jet::variable(x));
        assert_relative_eq!(j.value(), f(x), max_relative = 1e-14);
        assert_relative_eq!(j.derivative(1), fd1(f, x), max_relative = 1e-8, epsilon = 1e-9);
        assert_relative_eq!(j.derivative(2), fd2(f, x), max_relative = 1e-5, epsilon = 1e-6);
    }

    #[test]
    fn elementary_functions_match_finite_differences() {
        check(|j| j.exp(), f64::exp, 0.3);
        check(|j| j.ln(), f64::ln, 1.7);
        check(|j| j.sqrt(), f64::sqrt, 2.3);
        check(|j| j.powf(-1.5), |x| x.powf(-1.5), 0.8);
        check(|j| j.sin(), f64::sin, 0.9);
        check(|j| j.cos(), f64::cos, 0.9);
        check(|j| j.tanh(), f64::tanh, -0.4);
        check(|j| j.coth(), |x| 1.0 / x.tanh(), 0.7);
        check(|j| j.sech(), |x| 1.0 / x.cosh(), 1.1);
        check(|j| j.csch(), |x| 1.0 / x.sinh(), 1.1);
        check(|j| j.atan(), f64::atan, 0.5);
        check(|j| j.atanh(), f64::atanh, 0.6);
        check(|j| j.acoth(), |x| 0.5 * ((x + 1.0) / (x - 1.0)).ln(), 1.5);
        check(|j| j.acoth(), |x| 0.5 * ((x + 1.0) / (x - 1.0)).ln(), -2.5);
        check(|j| j.asin(), f64::asin, 0.6);
        check(|j| j.acosh(), f64::acosh, 1.6);
        check(|j| j.gd(), |x| 2.0 * (0.5 * x).tanh().atan(), 0.8);
    }

    #[test]
    fn higher_orders_of_exp_are_exact() {
        let j = Jet::variable(0.4).exp();
        for n in 0..=JET_ORDER {
            assert_relative_eq!(j.derivative(n), 0.4f64.exp(), max_relative = 1e-14);
        }
    }

    #[test]
    fn higher_orders_of_sin() {
        let j = Jet::variable(0.2).sin();
        let expect = [0.2f64.sin(), 0.2f64.cos(), -0.2f64.sin(), -0.2f64.cos(), 0.2f64.sin(), 0.2f64.cos()];
        for (n, e) in expect.iter().enumerate() {
            assert_relative_eq!(j.derivative(n), *e, max_relative = 1e-13);
        }
    }

    #[test]
    fn integer_power_of_negative_base() {
        let j = Jet::variable(-2.0).powf(3.0);
        assert_eq!(j.value(), -8.0);
        assert_relative_eq!(j.derivative(1), 12.0, max_relative = 1e-14);
        assert_relative_eq!(j.derivative(2), -12.0, max_relative = 1e-14);
        assert_relative_eq!(j.derivative(3), 6.0, max_relative = 1e-14);
        assert_eq!(Jet::variable(-2.0).powf(0.0), Jet::constant(1.0));
        let sq = Jet::variable(0.0).powf(2.0);
        assert_eq!(sq.derivative(2), 2.0);
        let r = Jet::variable(0.5).powf(-2.0);
        assert_relative_eq!(r.derivative(1), -16.0, max_relative = 1e-14);
    }

    #[test]
    fn division_and_recip() {
        // 1/(1-x) = sum x^n
        let j = (Jet::constant(1.0) - Jet::variable(0.0)).recip();
        assert_eq!(j.coeffs(), &[1.0; LEN]);
    }

    #[test]
    fn compose_series_reproduces_chain_rule() {
        // exp(sin(x)) computed directly and via re-expansion of exp about sin(x0).
        let x = Jet::variable(0.3);
        let s = x.sin();
        let direct = s.exp();
        let outer = Jet::variable(s.value()).exp();
        let via = Jet::compose_series(outer.coeffs(), &(s - s.value()));
        for n in 0..=JET_ORDER {
            assert_relative_eq!(direct.derivative(n), via.derivative(n), max_relative = 1e-12);
        }
    }

    #[test]
    fn d_shifts_coefficients() {
        let j = Jet::variable(0.5).exp().d();
        assert_relative_eq!(j.value(), 0.5f64.exp(), max_relative = 1e-14);
        assert_eq!(j.coeffs()[JET_ORDER], 0.0);
    }
}
