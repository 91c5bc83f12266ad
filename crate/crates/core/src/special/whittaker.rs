//! Whittaker functions `M`, `W` and the rotated second solution `M+`.
//!
//! All evaluators take the second parameter `nu` as a [`Jet`], so one call
//! returns the function together with its Taylor coefficients in `nu`
//! (equivalently in `s = nu + 1/2`).
//!
//! * `M` is summed from the Kummer series, which is exact in the parameters.
//! * `W` goes through Tricomi's `U`, integrated by an exp-sinh rule after
//!   shifting the first parameter up and recurring back down.
//! * `M+` is solved from the connection formula
//!   `M = G(1+2nu)/G(nu-mu+1/2) e^{i pi mu} M+ + G(1+2nu)/G(nu+mu+1/2) e^{-i pi (nu-mu+1/2)} W`,
//!   dividing out exact zeros of the Gamma ratio when the parameters are
//!   degenerate.

use super::gamma::{gamma_jet, rgamma_jet};
use crate::error::{Error, Result};
use crate::jet::{Jet, JET_LEN};
use crate::quad;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WhittakerParams {
    pub mu: Complex64,
    pub nu: Complex64,
    pub y: f64,
}

impl WhittakerParams {
    pub fn new(mu: f64, nu: f64, y: f64) -> Self {
        Self {
            mu: Complex64::new(mu, 0.0),
            nu: Complex64::new(nu, 0.0),
            y,
        }
    }
}

fn check_arg(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "Whittaker argument must be positive, got {t}"
        )));
    }
    Ok(())
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Regularized Kummer function `1F1(a; b; t) / Gamma(b)`.
pub fn kummer_m_regularized_jet(a: Jet, b: Jet, t: f64) -> Jet {
    // Near a nonpositive integer b, sum from the first index with a finite
    // Pochhammer denominator instead.
    let b0 = b.value();
    if is_nonpositive_integer(b0) {
        // 1F1(a;b;t)/G(b) = (a)_{n+1} t^{n+1}/(n+1)! 1F1(a+n+1; n+2; t)/G(n+2)
        // with b = -n; valid as an identity of entire functions in (a, b).
        let n = (-b0.re) as usize;
        let mut poch = Jet::constant(1.0);
        for i in 0..=n {
            poch *= a + i as f64;
        }
        let lead = poch.scale(t.powi(n as i32 + 1) / crate::jet::factorial(n + 1));
        return lead * kummer_m_regularized_jet(a + (n + 1) as f64, b + (n + 1) as f64, t);
    }
    let mut term = rgamma_jet(b);
    let mut sum = term;
    let mut n = 0usize;
    loop {
        term = term * (a + n as f64) / (b + n as f64) * (t / (n as f64 + 1.0));
        sum += term;
        n += 1;
        let scale = sum.max_abs().max(1e-300);
        let a_re = a.value().re.abs();
        if n as f64 > t + a_re + 10.0 && term.max_abs() < 1e-17 * scale {
            break;
        }
        if n > 20_000 {
            break;
        }
    }
    sum
}

/// `M_{mu,nu}(t)` with jet-valued `nu`.
pub fn whittaker_m_jet(mu: Complex64, nu: Jet, t: f64) -> Result<Jet> {
    check_arg(t)?;
    let b = nu.scale(2.0) + 1.0;
    if is_nonpositive_integer(b.value()) {
        return Err(Error::ParameterSingularity(format!(
            "Gamma(1+2nu) pole at nu = {}",
            nu.value()
        )));
    }
    let a = nu - mu + 0.5;
    let reg = kummer_m_regularized_jet(a, b, t);
    let pref = ((nu + 0.5).scale(t.ln()) - t / 2.0).exp();
    Ok(pref * reg * gamma_jet(b)?)
}

/// Plain-valued `M_{mu,nu}(t)` for complex parameters; used by the coset sum
/// where millions of evaluations are needed.
pub fn whittaker_m_scalar(mu: Complex64, nu: Complex64, t: f64) -> Complex64 {
    let a = nu - mu + 0.5;
    let b = 2.0 * nu + 1.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut n = 0usize;
    loop {
        term = term * (a + n as f64) / (b + n as f64) * (t / (n as f64 + 1.0));
        sum += term;
        n += 1;
        if n as f64 > t + a.re.abs() + 5.0 && term.norm() < 1e-17 * sum.norm() {
            break;
        }
        if n > 20_000 {
            break;
        }
    }
    ((nu + 0.5) * t.ln() - t / 2.0).exp() * sum
}

/// Tricomi `U(a, b, t)` for `t > 0`, jet-valued parameters.
pub fn tricomi_u_jet(a: Jet, b: Jet, t: f64) -> Jet {
    let a_re = a.value().re;
    let shift = if a_re < 1.0 {
        (1.0 - a_re).ceil() as usize
    } else {
        0
    };
    let top = a + shift as f64;
    let u_top = tricomi_u_integral(top, b, t);
    if shift == 0 {
        return u_top;
    }
    let u_above = tricomi_u_integral(top + 1.0, b, t);
    // U(x-1) = (2x - b + t) U(x) - x (x - b + 1) U(x+1)
    let (mut hi, mut cur) = (u_above, u_top);
    for i in 0..shift {
        let x = top - i as f64;
        let lower = (x.scale(2.0) - b + t) * cur - x * (x - b + 1.0) * hi;
        hi = cur;
        cur = lower;
    }
    cur
}

/// Laplace integral for `U`, requires `Re a >= 1`.
fn tricomi_u_integral(a: Jet, b: Jet, t: f64) -> Jet {
    let tau = t.max(1.0);
    let am1 = a - 1.0;
    let c = b - a - 1.0;
    let integral = quad::integrate_half_line(
        |v| {
            let u = v / tau;
            let e = am1.scale(u.ln()) + c.scale(u.ln_1p()) - t * u;
            e.exp()
        },
        Jet::zero(),
    );
    integral * rgamma_jet(a) / tau
}

/// `W_{mu,nu}(t)` with jet-valued `nu`.
pub fn whittaker_w_jet(mu: Complex64, nu: Jet, t: f64) -> Result<Jet> {
    check_arg(t)?;
    let a = nu - mu + 0.5;
    let b = nu.scale(2.0) + 1.0;
    let u = tricomi_u_jet(a, b, t);
    let pref = ((nu + 0.5).scale(t.ln()) - t / 2.0).exp();
    Ok(pref * u)
}

/// `M+_{mu,nu}(t) = W_{-mu,nu}(t e^{pi i})` solved from the connection
/// formula. Returns the jet and the number of trustworthy orders (one order
/// is lost when `nu - mu + 1/2` is a nonpositive integer).
pub fn mplus_jet(mu: Complex64, nu: Jet, t: f64) -> Result<(Jet, usize)> {
    check_arg(t)?;
    // M+ is even in nu; work on the side where Gamma(1+2nu) is regular.
    let nu = if nu.value().re < 0.0 { -nu } else { nu };
    let b = nu.scale(2.0) + 1.0;
    if is_nonpositive_integer(b.value()) {
        return Err(Error::ParameterSingularity(format!(
            "1+2nu = {} is a pole even after reflection",
            b.value()
        )));
    }
    let a_minus = nu - mu + 0.5;
    let a_plus = nu + mu + 0.5;
    let i_pi = Complex64::new(0.0, PI);
    // M / Gamma(1+2nu)
    let m_reg = {
        let reg = kummer_m_regularized_jet(a_minus, b, t);
        let pref = ((nu + 0.5).scale(t.ln()) - t / 2.0).exp();
        pref * reg
    };
    let w = whittaker_w_jet(mu, nu, t)?;
    let w_coef = rgamma_jet(a_plus) * a_minus.scale(-i_pi).exp();
    let numer = m_reg - w_coef * w;
    let denom = rgamma_jet(a_minus) * (i_pi * mu).exp();
    if denom.value() == Complex64::new(0.0, 0.0) && denom.coeff(1) == Complex64::new(0.0, 0.0) {
        return Err(Error::ParameterSingularity(format!(
            "connection coefficient vanishes to second order at mu={mu}, nu={}",
            nu.value()
        )));
    }
    Ok(numer.div_with_valuation(&denom))
}

/// Scalar `M_{mu,nu}(y)`.
#[allow(non_snake_case)]
pub fn whittaker_M(p: WhittakerParams) -> Result<Complex64> {
    Ok(whittaker_m_jet(p.mu, Jet::constant(p.nu), p.y)?.value())
}

/// Scalar `W_{mu,nu}(y)`.
#[allow(non_snake_case)]
pub fn whittaker_W(p: WhittakerParams) -> Result<Complex64> {
    Ok(whittaker_w_jet(p.mu, Jet::constant(p.nu), p.y)?.value())
}

/// Scalar `M+_{mu,nu}(y)`; at degenerate parameters this is the limit in
/// `nu`.
pub fn mplus(p: WhittakerParams) -> Result<Complex64> {
    Ok(mplus_jet(p.mu, Jet::variable(p.nu), p.y)?.0.value())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhittakerKind {
    W,
    Mplus,
}

/// Finite-difference settings for s-derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdPolicy {
    pub step: f64,
    pub richardson_levels: usize,
}

impl Default for FdPolicy {
    fn default() -> Self {
        Self {
            step: 1e-3,
            richardson_levels: 2,
        }
    }
}

fn eval_kind(which: WhittakerKind, mu: Complex64, nu: Complex64, t: f64) -> Result<Complex64> {
    match which {
        WhittakerKind::W => Ok(whittaker_w_jet(mu, Jet::constant(nu), t)?.value()),
        WhittakerKind::Mplus => mplus(WhittakerParams { mu, nu, y: t }),
    }
}

/// `d^j/ds^j` of `W_{mu,s-1/2}(y)` or `M+_{mu,s-1/2}(y)` at `s = nu + 1/2`
/// by central differences with Richardson extrapolation.
pub fn whittaker_s_deriv(
    p: WhittakerParams,
    j: usize,
    which: WhittakerKind,
    fd: FdPolicy,
) -> Result<Complex64> {
    if j == 0 {
        return eval_kind(which, p.mu, p.nu, p.y);
    }
    if j > 4 {
        return Err(Error::Unsupported(format!(
            "finite-difference order {j} > 4"
        )));
    }
    if !(fd.step > 1e-8) {
        return Err(Error::InvalidArgument(format!(
            "step underflow: {}",
            fd.step
        )));
    }
    let f = |d: f64| eval_kind(which, p.mu, p.nu + d, p.y);
    let central = |h: f64| -> Result<Complex64> {
        // second-order central stencils
        Ok(match j {
            1 => (f(h)? - f(-h)?) / (2.0 * h),
            2 => (f(h)? - 2.0 * f(0.0)? + f(-h)?) / (h * h),
            3 => (f(2.0 * h)? - 2.0 * f(h)? + 2.0 * f(-h)? - f(-2.0 * h)?) / (2.0 * h * h * h),
            _ => {
                (f(2.0 * h)? - 4.0 * f(h)? + 6.0 * f(0.0)? - 4.0 * f(-h)? + f(-2.0 * h)?)
                    / (h * h * h * h)
            }
        })
    };
    let levels = fd.richardson_levels;
    let mut table: Vec<Complex64> = (0..=levels)
        .map(|l| central(fd.step / 2f64.powi(l as i32)))
        .collect::<Result<_>>()?;
    let mut factor = 4.0;
    for _ in 0..levels {
        table = table
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        factor *= 4.0;
    }
    Ok(table[0])
}

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum Sign {
    Minus,
    Plus,
}

/// Taylor jet of `u^{[.],sign}_{k,n}(y)`: coefficient `j` equals
/// `u^{[j],sign}_{k,n}(y) / j!`. Also returns the number of valid orders.
pub fn u_jet(k: i64, n: i64, sign: Sign, y: f64) -> Result<(Jet, usize)> {
    check_arg(y)?;
    let kf = k as f64;
    if n == 0 {
        let ly = y.ln();
        let j = match sign {
            Sign::Minus => Jet::linear(0.0, -ly).exp().scale(y.powf(1.0 - kf)),
            Sign::Plus => Jet::linear(0.0, ly).exp(),
        };
        return Ok((j, JET_LEN));
    }
    let mu = Complex64::new(n.signum() as f64 * kf / 2.0, 0.0);
    let t = 4.0 * PI * n.unsigned_abs() as f64 * y;
    // expand around the parameter side with s >= 1, then map back
    let flip = k <= 0;
    let s_base = if flip { 1.0 - kf / 2.0 } else { kf / 2.0 };
    let nu = Jet::variable(s_base - 0.5);
    let (f, kept) = match sign {
        Sign::Minus => (whittaker_w_jet(mu, nu, t)?, JET_LEN),
        Sign::Plus => mplus_jet(mu, nu, t)?,
    };
    let f = f.scale(y.powf(-kf / 2.0));
    Ok((if flip { f.reflect() } else { f }, kept))
}

/// `u^{[j],sign}_{k,n}(y)`.
pub fn u_eval(k: i64, n: i64, j: usize, sign: Sign, y: f64) -> Result<Complex64> {
    let (jet, kept) = u_jet(k, n, sign, y)?;
    if j >= kept {
        return Err(Error::Unsupported(format!(
            "derivative order {j} exceeds the {kept} orders available"
        )));
    }
    Ok(jet.derivative(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma::gamma_fn;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn w_closed_forms() {
        for &t in &[0.5, 2.0, 10.0] {
            let w = whittaker_W(WhittakerParams::new(1.0, 0.5, t)).unwrap();
            assert!(rel(w, c(t * (-t / 2.0).exp())) < 1e-12, "t={t} {w}");
            let w = whittaker_W(WhittakerParams::new(0.0, -0.5, t)).unwrap();
            assert!(rel(w, c((-t / 2.0).exp())) < 1e-12, "t={t} {w}");
        }
    }

    #[test]
    fn w_asymptotic_ratio() {
        let t = 50.0;
        let w = whittaker_W(WhittakerParams::new(1.0, 0.5, t)).unwrap();
        let asym = t * (-t / 2.0).exp();
        assert!(rel(w, c(asym)) < 0.01);
    }

    #[test]
    fn m_asymptotic_ratio() {
        // M ~ G(1+2nu)/G(nu-mu+1/2) y^{-mu} e^{y/2}; mu = 0, nu = 1
        let t = 50.0;
        let m = whittaker_M(WhittakerParams::new(0.0, 1.0, t)).unwrap();
        let asym = gamma_fn(c(3.0)).unwrap() / gamma_fn(c(1.5)).unwrap() * (t / 2.0).exp();
        assert!(rel(m, asym) < 0.02);
    }

    #[test]
    fn m_parameter_singularity() {
        let r = whittaker_M(WhittakerParams::new(0.0, -1.0, 1.0));
        assert!(matches!(r, Err(Error::ParameterSingularity(_))));
    }

    #[test]
    fn mplus_elementary_case() {
        // M+_{0,-1/2}(t) = e^{t/2}
        for &t in &[0.5, 3.0, 12.0] {
            let v = mplus(WhittakerParams::new(0.0, -0.5, t)).unwrap();
            assert!(rel(v, c((t / 2.0).exp())) < 1e-12, "{t}: {v}");
        }
    }

    #[test]
    fn mplus_matches_bessel_form() {
        // M+_{0,nu}(t) = sqrt(t/pi) (pi I_nu(t/2) + i e^{-i pi nu} K_nu(t/2)); at nu = 1/2:
        // I_{1/2}(x) = sqrt(2/(pi x)) sinh x, K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
        let t: f64 = 3.0;
        let x = t / 2.0;
        let i_half = (2.0 / (PI * x)).sqrt() * x.sinh();
        let k_half = (PI / (2.0 * x)).sqrt() * (-x).exp();
        let expect = (t / PI).sqrt()
            * (PI * i_half
                + Complex64::new(0.0, 1.0) * Complex64::new(0.0, -PI / 2.0).exp() * k_half);
        let v = mplus(WhittakerParams::new(0.0, 0.5, t)).unwrap();
        assert!(rel(v, expect) < 1e-12, "{v} vs {expect}");
    }

    #[test]
    fn u_closed_forms() {
        let y = 1.0;
        // n > 0, k = 2: u^{[0],-} e^{2 pi i n x} = (4 pi n) q^n
        let v = u_eval(2, 1, 0, Sign::Minus, y).unwrap();
        assert!(rel(v, c(4.0 * PI * (-2.0 * PI).exp())) < 1e-12);
        // n = 0 closed form
        let v = u_eval(4, 0, 2, Sign::Plus, std::f64::consts::E).unwrap();
        assert!(rel(v, c(1.0)) < 1e-14);
        // n < 0, k = 0: Gamma(1, 4 pi y) q^{-1} up to the e^{2 pi i n x} factor
        let v = u_eval(0, -1, 0, Sign::Minus, y).unwrap();
        let expect = (-4.0 * PI * y).exp() * (2.0 * PI * y).exp();
        assert!(rel(v, c(expect)) < 1e-12);
        // n < 0, + : (4 pi n)^{k/2} q^n with k = 2 -> -(4 pi) e^{2 pi y}
        let v = u_eval(2, -1, 0, Sign::Plus, y).unwrap();
        assert!(rel(v, c(-4.0 * PI * (2.0 * PI * y).exp())) < 1e-12, "{v}");
    }

    #[test]
    fn s_derivative_jets_match_finite_differences() {
        let p = WhittakerParams::new(0.0, 0.5, 2.0);
        let jet = whittaker_w_jet(p.mu, Jet::variable(p.nu), p.y).unwrap();
        for j in 1..=3 {
            // wide steps keep the 1/h^j amplification of quadrature noise small
            let fd = whittaker_s_deriv(
                p,
                j,
                WhittakerKind::W,
                FdPolicy {
                    step: 2e-2,
                    richardson_levels: 2,
                },
            )
            .unwrap();
            assert!(
                (fd - jet.derivative(j)).norm() < 1e-6,
                "j={j}: {fd} vs {}",
                jet.derivative(j)
            );
        }
        let pm = WhittakerParams::new(1.0, 0.3, 2.0);
        let (jet, _) = mplus_jet(pm.mu, Jet::variable(pm.nu), pm.y).unwrap();
        let fd = whittaker_s_deriv(pm, 1, WhittakerKind::Mplus, FdPolicy::default()).unwrap();
        assert!((fd - jet.derivative(1)).norm() < 1e-6 * (1.0 + fd.norm()));
    }

    #[test]
    fn s_derivative_richardson_self_consistency() {
        let p = WhittakerParams::new(0.0, 0.5, 2.0);
        let a = whittaker_s_deriv(p, 1, WhittakerKind::W, FdPolicy::default()).unwrap();
        let b = whittaker_s_deriv(
            p,
            1,
            WhittakerKind::W,
            FdPolicy {
                step: 5e-4,
                richardson_levels: 2,
            },
        )
        .unwrap();
        assert!((a - b).norm() < 1e-6);
    }

    #[test]
    fn nu_reflection_symmetry_of_derivatives() {
        // d^j/dnu^j W at nu0 = (-1)^j d^j/dnu^j W at -nu0
        let t = 3.0;
        let a = whittaker_w_jet(c(0.7), Jet::variable(0.8), t).unwrap();
        let b = whittaker_w_jet(c(0.7), Jet::variable(-0.8), t).unwrap();
        for j in 0..4 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a.coeff(j) - b.coeff(j) * sign).norm() < 1e-11 * (1.0 + a.coeff(j).norm()));
        }
    }

    #[test]
    fn step_underflow_is_an_error() {
        let p = WhittakerParams::new(0.0, 0.5, 2.0);
        let r = whittaker_s_deriv(
            p,
            1,
            WhittakerKind::W,
            FdPolicy {
                step: 1e-12,
                richardson_levels: 1,
            },
        );
        assert!(r.is_err());
    }

    fn t_derivs(f: &dyn Fn(f64) -> Complex64, t: f64) -> (Complex64, Complex64, Complex64) {
        let h = 1e-3 * t.max(1.0);
        let f0 = f(t);
        let (fp, fm) = (f(t + h), f(t - h));
        let (fp2, fm2) = (f(t + 2.0 * h), f(t - 2.0 * h));
        let d1 = (8.0 * (fp - fm) - (fp2 - fm2)) / (12.0 * h);
        let d2 = (16.0 * (fp + fm) - (fp2 + fm2) - 30.0 * f0) / (12.0 * h * h);
        (f0, d1, d2)
    }

    #[test]
    fn whittaker_ode_residuals() {
        for &(mu, nu) in &[(0.0, 0.5), (1.0, 0.3), (-6.0, 5.5), (6.0, 5.5), (-1.0, 0.5)] {
            for &t in &[1.5, 4.0, 15.0] {
                let pot = |t: f64| -0.25 + mu / t + (0.25 - nu * nu) / (t * t);
                let fw = |x: f64| whittaker_W(WhittakerParams::new(mu, nu, x)).unwrap();
                let (w, _, w2) = t_derivs(&fw, t);
                assert!(
                    (w2 + pot(t) * w).norm() < 1e-6 * (w.norm() + w2.norm()),
                    "W mu={mu} nu={nu} t={t}"
                );
                let fm = |x: f64| mplus(WhittakerParams::new(mu, nu, x)).unwrap();
                let (m, _, m2) = t_derivs(&fm, t);
                assert!(
                    (m2 + pot(t) * m).norm() < 1e-6 * (m.norm() + m2.norm()),
                    "M+ mu={mu} nu={nu} t={t}"
                );
            }
        }
    }

    #[test]
    fn wronskian_of_m_and_w() {
        for &(mu, nu) in &[(0.0, 0.5), (1.0, 0.3), (-2.0, 1.5)] {
            let t = 3.0;
            let fm = |x: f64| whittaker_M(WhittakerParams::new(mu, nu, x)).unwrap();
            let fw = |x: f64| whittaker_W(WhittakerParams::new(mu, nu, x)).unwrap();
            let (m, m1, _) = t_derivs(&fm, t);
            let (w, w1, _) = t_derivs(&fw, t);
            let wr = m * w1 - m1 * w;
            let expect =
                -gamma_fn(c(1.0 + 2.0 * nu)).unwrap() / gamma_fn(c(nu - mu + 0.5)).unwrap();
            assert!(rel(wr, expect) < 1e-8, "mu={mu} nu={nu}: {wr} vs {expect}");
        }
    }

    #[test]
    fn connection_formula_residual() {
        let (mu, nu, t) = (c(0.7), c(0.9), 2.5);
        let p = WhittakerParams { mu, nu, y: t };
        let m = whittaker_M(p).unwrap();
        let w = whittaker_W(p).unwrap();
        let mp = mplus(p).unwrap();
        let g = gamma_fn(1.0 + 2.0 * nu).unwrap();
        let i_pi = Complex64::new(0.0, PI);
        let rhs = g / gamma_fn(nu - mu + 0.5).unwrap() * (i_pi * mu).exp() * mp
            + g / gamma_fn(nu + mu + 0.5).unwrap() * (-i_pi * (nu - mu + 0.5)).exp() * w;
        assert!(rel(rhs, m) < 1e-12);
    }

    #[test]
    fn m_matches_integral_representation() {
        // M = G(1+2nu) t^{nu+1/2} / (2^{2nu} G(1/2+nu+mu) G(1/2+nu-mu))
        //     * int_{-1}^{1} e^{t x/2} (1+x)^{nu-mu-1/2} (1-x)^{nu+mu-1/2} dx
        for &(mu, nu, t) in &[(0.0, 0.5, 2.0), (0.4, 1.2, 7.0), (-1.0, 1.5, 0.6)] {
            let integral = quad::integrate_tanh_sinh(
                |x: f64| {
                    (t * x / 2.0).exp()
                        * (1.0 + x).powf(nu - mu - 0.5)
                        * (1.0 - x).powf(nu + mu - 0.5)
                },
                -1.0,
                1.0,
                0.0,
            );
            let pref = gamma_fn(c(1.0 + 2.0 * nu)).unwrap().re * t.powf(nu + 0.5)
                / (2f64.powf(2.0 * nu)
                    * gamma_fn(c(0.5 + nu + mu)).unwrap().re
                    * gamma_fn(c(0.5 + nu - mu)).unwrap().re);
            let m = whittaker_M(WhittakerParams::new(mu, nu, t)).unwrap();
            assert!(rel(m, c(pref * integral)) < 1e-10, "mu={mu} nu={nu} t={t}");
        }
    }

    #[test]
    fn degenerate_mplus_is_the_limit() {
        let t = 5.0;
        let (exact, kept) = mplus_jet(c(6.0), Jet::variable(5.5), t).unwrap();
        assert_eq!(kept, JET_LEN - 1);
        let near = mplus(WhittakerParams::new(6.0, 5.5 + 1e-7, t)).unwrap();
        assert!(rel(exact.value(), near) < 1e-5);
        // reflection in nu leaves M+ unchanged
        let neg = mplus(WhittakerParams::new(0.7, -0.8, t)).unwrap();
        let pos = mplus(WhittakerParams::new(0.7, 0.8, t)).unwrap();
        assert!(rel(neg, pos) < 1e-14);
    }

    #[test]
    fn growth_and_decay() {
        let w = |t| {
            whittaker_W(WhittakerParams::new(1.0, 0.5, t))
                .unwrap()
                .norm()
        };
        let m = |t| mplus(WhittakerParams::new(1.0, 0.5, t)).unwrap().norm();
        assert!(w(50.0) < 1e-6 * w(10.0));
        assert!(m(40.0) > 1e5 * m(10.0));
    }

    #[test]
    fn lowering_identity_for_w() {
        // d/dz (z^{-mu} e^{z/2} W_{mu,nu}) = (1/2+nu-mu)(1/2-nu-mu) z^{-mu-1} e^{z/2} W_{mu-1,nu}
        for &(mu, nu, t) in &[(1.0, 0.3, 2.0), (-0.5, 1.1, 5.0), (3.0, 2.5, 7.0)] {
            let f = |x: f64| {
                whittaker_W(WhittakerParams::new(mu, nu, x)).unwrap()
                    * x.powf(-mu)
                    * (x / 2.0).exp()
            };
            let (_, d, _) = t_derivs(&f, t);
            let rhs = whittaker_W(WhittakerParams::new(mu - 1.0, nu, t)).unwrap()
                * ((0.5 + nu - mu) * (0.5 - nu - mu) * t.powf(-mu - 1.0) * (t / 2.0).exp());
            assert!(
                (d - rhs).norm() < 1e-6 * (1.0 + rhs.norm() + f(t).norm()),
                "mu={mu} nu={nu}"
            );
        }
    }

    #[test]
    fn ode_residual_on_a_parameter_grid() {
        let mut count = 0;
        for i in 0..20 {
            let mu = -3.0 + 0.31 * i as f64;
            let nu = 0.1 + 0.17 * ((i * 7) % 20) as f64;
            let t = 1.5 + 0.6 * ((i * 3) % 20) as f64;
            let pot = -0.25 + mu / t + (0.25 - nu * nu) / (t * t);
            for which in [0, 1] {
                let f = |x: f64| {
                    let p = WhittakerParams::new(mu, nu, x);
                    if which == 0 {
                        whittaker_M(p).unwrap()
                    } else {
                        whittaker_W(p).unwrap()
                    }
                };
                let (v, _, d2) = t_derivs(&f, t);
                assert!(
                    (d2 + pot * v).norm() < 1e-6 * (v.norm() + d2.norm()),
                    "i={i} which={which}"
                );
                count += 1;
            }
        }
        assert_eq!(count, 40);
    }

    #[test]
    fn u_functions_decay_and_grow() {
        // sign of the log-derivative in y at y = 20
        let h = 1e-4;
        for j in 0..3 {
            let lm = |y: f64| u_eval(2, 1, j, Sign::Minus, y).unwrap().norm().ln();
            let lp = |y: f64| u_eval(2, 1, j, Sign::Plus, y).unwrap().norm().ln();
            assert!(lm(20.0 + h) < lm(20.0 - h), "minus j={j}");
            assert!(lp(20.0 + h) > lp(20.0 - h), "plus j={j}");
        }
    }
}
