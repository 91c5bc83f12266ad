//! Truncated Taylor arithmetic in one variable.
//!
//! A [`Jet`] stores the Taylor coefficients `f(s0 + e) = sum_i c_i e^i` for
//! `i < JET_LEN`. Every s-derivative in the crate is taken this way, so
//! derivatives of Gamma ratios, Whittaker and Bessel functions are exact up
//! to rounding instead of finite differences.

use num_complex::Complex64;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub const JET_LEN: usize = 6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet(pub [Complex64; JET_LEN]);

impl Default for Jet {
    fn default() -> Self {
        Jet::zero()
    }
}

impl Jet {
    pub fn zero() -> Self {
        Jet([ZERO; JET_LEN])
    }

    pub fn constant<T: Into<Complex64>>(v: T) -> Self {
        let mut c = [ZERO; JET_LEN];
        c[0] = v.into();
        Jet(c)
    }

    /// The independent variable `s0 + e`.
    pub fn variable<T: Into<Complex64>>(s0: T) -> Self {
        Self::linear(s0, 1.0)
    }

    /// `v + slope * e`.
    pub fn linear<T: Into<Complex64>, U: Into<Complex64>>(v: T, slope: U) -> Self {
        let mut c = [ZERO; JET_LEN];
        c[0] = v.into();
        c[1] = slope.into();
        Jet(c)
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.0[0]
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> Complex64 {
        self.0[i]
    }

    /// `d^j/de^j` at `e = 0`.
    pub fn derivative(&self, j: usize) -> Complex64 {
        self.0[j] * factorial(j)
    }

    pub fn scale<T: Into<Complex64>>(&self, k: T) -> Self {
        let k = k.into();
        let mut c = self.0;
        for x in c.iter_mut() {
            *x *= k;
        }
        Jet(c)
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0;
        for x in c.iter_mut() {
            *x = x.conj();
        }
        Jet(c)
    }

    /// Substitute `e -> -e`.
    pub fn reflect(&self) -> Self {
        let mut c = self.0;
        for (i, x) in c.iter_mut().enumerate() {
            if i % 2 == 1 {
                *x = -*x;
            }
        }
        Jet(c)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn recip(&self) -> Self {
        Jet::constant(1.0) / *self
    }

    pub fn exp(&self) -> Self {
        let mut b = [ZERO; JET_LEN];
        b[0] = self.0[0].exp();
        for n in 1..JET_LEN {
            let mut acc = ZERO;
            for k in 1..=n {
                acc += self.0[k] * b[n - k] * (k as f64);
            }
            b[n] = acc / (n as f64);
        }
        Jet(b)
    }

    /// Principal logarithm. The constant term must be nonzero.
    pub fn ln(&self) -> Self {
        let a0 = self.0[0];
        let mut b = [ZERO; JET_LEN];
        b[0] = a0.ln();
        for n in 1..JET_LEN {
            let mut acc = ZERO;
            for k in 1..n {
                acc += b[k] * self.0[n - k] * (k as f64);
            }
            b[n] = (self.0[n] - acc / (n as f64)) / a0;
        }
        Jet(b)
    }

    pub fn powc(&self, p: Jet) -> Self {
        (self.ln() * p).exp()
    }

    pub fn sin(&self) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let a = self.scale(i).exp();
        let b = self.scale(-i).exp();
        (a - b).scale(Complex64::new(0.0, -0.5))
    }

    pub fn cos(&self) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let a = self.scale(i).exp();
        let b = self.scale(-i).exp();
        (a + b).scale(0.5)
    }

    /// Divide by `e^v`, dropping the first `v` coefficients (which the caller
    /// asserts vanish). The top `v` orders become unknown and are zeroed.
    pub fn shift_down(&self, v: usize) -> Self {
        let mut c = [ZERO; JET_LEN];
        for i in 0..JET_LEN.saturating_sub(v) {
            c[i] = self.0[i + v];
        }
        Jet(c)
    }

    /// Number of leading coefficients that are exactly zero.
    pub fn valuation(&self) -> usize {
        self.0.iter().take_while(|c| **c == ZERO).count()
    }

    /// `self / other` where `other` may have exact leading zeros; the same
    /// number of leading orders is dropped from `self`. Returns the quotient
    /// and the number of trustworthy orders.
    pub fn div_with_valuation(&self, other: &Jet) -> (Jet, usize) {
        let v = other.valuation();
        if v == 0 {
            return (*self / *other, JET_LEN);
        }
        (self.shift_down(v) / other.shift_down(v), JET_LEN - v)
    }
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |a, b| a * b as f64)
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut c = self.0;
        for i in 0..JET_LEN {
            c[i] += o.0[i];
        }
        Jet(c)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        let mut c = self.0;
        for i in 0..JET_LEN {
            c[i] -= o.0[i];
        }
        Jet(c)
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
    fn mul(self, o: Jet) -> Jet {
        let mut c = [ZERO; JET_LEN];
        for i in 0..JET_LEN {
            if self.0[i] == ZERO {
                continue;
            }
            for j in 0..JET_LEN - i {
                c[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(c)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let b0 = o.0[0];
        let mut c = [ZERO; JET_LEN];
        for n in 0..JET_LEN {
            let mut acc = self.0[n];
            for k in 1..=n {
                acc -= o.0[k] * c[n - k];
            }
            c[n] = acc / b0;
        }
        Jet(c)
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, o: Jet) {
        *self = *self + o;
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, o: Jet) {
        *self = *self - o;
    }
}

impl MulAssign for Jet {
    fn mul_assign(&mut self, o: Jet) {
        *self = *self * o;
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, o: f64) -> Jet {
        let mut c = self.0;
        c[0] += o;
        Jet(c)
    }
}

impl Add<Complex64> for Jet {
    type Output = Jet;
    fn add(self, o: Complex64) -> Jet {
        let mut c = self.0;
        c[0] += o;
        Jet(c)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, o: f64) -> Jet {
        self + (-o)
    }
}

impl Sub<Complex64> for Jet {
    type Output = Jet;
    fn sub(self, o: Complex64) -> Jet {
        self + (-o)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, o: f64) -> Jet {
        self.scale(o)
    }
}

impl Mul<Complex64> for Jet {
    type Output = Jet;
    fn mul(self, o: Complex64) -> Jet {
        self.scale(o)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, o: f64) -> Jet {
        self.scale(1.0 / o)
    }
}

impl From<f64> for Jet {
    fn from(v: f64) -> Jet {
        Jet::constant(v)
    }
}

impl From<Complex64> for Jet {
    fn from(v: Complex64) -> Jet {
        Jet::constant(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn exp_ln_roundtrip() {
        let x = Jet([
            Complex64::new(1.3, 0.2),
            Complex64::new(0.5, 0.0),
            Complex64::new(-0.25, 0.1),
            Complex64::new(0.1, 0.0),
            ZERO,
            Complex64::new(0.03, -0.02),
        ]);
        let y = x.ln().exp();
        for i in 0..JET_LEN {
            assert!(
                close(y.0[i], x.0[i], 1e-14),
                "{i}: {:?} vs {:?}",
                y.0[i],
                x.0[i]
            );
        }
    }

    #[test]
    fn exp_of_variable_matches_taylor() {
        let e = Jet::variable(0.0).exp();
        for i in 0..JET_LEN {
            assert!((e.0[i].re - 1.0 / factorial(i)).abs() < 1e-15);
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Jet::variable(2.0).exp() + Jet::variable(0.3).sin();
        let b = Jet::variable(1.5).cos() + 3.0;
        let q = (a * b) / b;
        for i in 0..JET_LEN {
            assert!(close(q.0[i], a.0[i], 1e-13));
        }
    }

    #[test]
    fn valuation_division_drops_orders() {
        // (e * g) / e == g on the kept orders.
        let g = Jet::variable(0.7).exp();
        let e = Jet::variable(0.0);
        let (q, kept) = (e * g).div_with_valuation(&e);
        assert_eq!(kept, JET_LEN - 1);
        for i in 0..kept {
            assert!(close(q.0[i], g.0[i], 1e-14));
        }
    }

    #[test]
    fn sin_cos_pythagoras() {
        let x = Jet::variable(Complex64::new(0.4, 0.1));
        let s = x.sin();
        let c = x.cos();
        let one = s * s + c * c;
        assert!(close(one.0[0], Complex64::new(1.0, 0.0), 1e-14));
        for i in 1..JET_LEN {
            assert!(one.0[i].norm() < 1e-13);
        }
    }
}
