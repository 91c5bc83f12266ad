//! Bessel `J` and `I` with jet-valued order.

use super::gamma::rgamma_jet;
use crate::jet::Jet;
use crate::quad;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselKind {
    J,
    I,
}

/// Above this argument `J` switches from the power series to Schläfli's
/// integral; the series loses about `x / ln 10` digits to cancellation.
const J_SERIES_MAX: f64 = 12.0;

/// `J_nu(x)` or `I_nu(x)` for `x > 0` with the order given as a jet.
pub fn bessel_jet(kind: BesselKind, nu: Jet, x: f64) -> Jet {
    bessel_jet_with(kind, nu, rgamma_jet(nu + 1.0), x)
}

/// As [`bessel_jet`] with `1/Gamma(nu+1)` supplied by the caller, for loops
/// that evaluate many arguments at one order.
pub fn bessel_jet_with(kind: BesselKind, nu: Jet, rgamma_nu1: Jet, x: f64) -> Jet {
    match kind {
        BesselKind::J if x > J_SERIES_MAX => bessel_j_schlaefli(nu, x),
        BesselKind::J => bessel_series_with(nu, rgamma_nu1, x, -1.0),
        BesselKind::I => bessel_series_with(nu, rgamma_nu1, x, 1.0),
    }
}

#[cfg(test)]
fn bessel_series(nu: Jet, x: f64, sign: f64) -> Jet {
    bessel_series_with(nu, rgamma_jet(nu + 1.0), x, sign)
}

fn bessel_series_with(nu: Jet, rgamma_nu1: Jet, x: f64, sign: f64) -> Jet {
    let half = 0.5 * x;
    let q = sign * half * half;
    let mut term = nu.scale(half.ln()).exp() * rgamma_nu1;
    let mut sum = term;
    let mut k = 0usize;
    loop {
        term = term * (nu + (k + 1) as f64).recip() * (q / (k + 1) as f64);
        sum += term;
        k += 1;
        if k as f64 > half && term.max_abs() <= 1e-17 * sum.max_abs() {
            break;
        }
        if k > 5000 {
            break;
        }
    }
    sum
}

/// `J_nu(x) = 1/pi int_0^pi cos(nu t - x sin t) dt
///           - sin(nu pi)/pi int_0^inf exp(-x sinh t - nu t) dt`.
fn bessel_j_schlaefli(nu: Jet, x: f64) -> Jet {
    let panels = (x / 4.0).ceil() as usize + 4;
    let osc = quad::integrate_interval(
        |t| (nu.scale(t) - x * t.sin()).cos(),
        0.0,
        PI,
        panels,
        Jet::zero(),
    );
    // the tail integrand is below e^{-40} past this point
    let upper = (40.0 / x).asinh() + 1.0;
    let tail = quad::integrate_interval(
        |t| (nu.scale(-t) - x * t.sinh()).exp(),
        0.0,
        upper,
        8,
        Jet::zero(),
    );
    (osc - (nu.scale(PI)).sin() * tail).scale(1.0 / PI)
}

pub fn bessel_j(nu: f64, x: f64) -> f64 {
    bessel_jet(BesselKind::J, Jet::constant(nu), x).value().re
}

pub fn bessel_i(nu: f64, x: f64) -> f64 {
    bessel_jet(BesselKind::I, Jet::constant(nu), x).value().re
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn half_order_closed_forms() {
        for &x in &[0.7, 3.0, 11.5, 12.5, 40.0, 300.0] {
            let j = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!(close(bessel_j(0.5, x), j, 1e-12), "J x={x}");
        }
        for &x in &[0.7, 3.0, 30.0] {
            let i = (2.0 / (PI * x)).sqrt() * x.sinh();
            assert!((bessel_i(0.5, x) - i).abs() <= 1e-13 * i, "I x={x}");
        }
    }

    #[test]
    fn integer_order_values() {
        assert!(close(bessel_j(0.0, 1.0), 0.765_197_686_557_966_6, 1e-14));
        assert!(close(bessel_j(1.0, 20.0), 0.066_833_124_175_850_05, 1e-12));
        assert!(close(bessel_j(11.0, 20.0), 0.061_356_303_375_950_9, 1e-12));
        assert!(close(bessel_i(1.0, 1.0), 0.565_159_103_992_485_0, 1e-14));
    }

    #[test]
    fn branches_agree_near_the_switch() {
        for &nu in &[1.0, 3.3, 11.0] {
            let a = bessel_series(Jet::variable(nu), 12.0, -1.0);
            let b = bessel_j_schlaefli(Jet::variable(nu), 12.0);
            for i in 0..4 {
                assert!((a.coeff(i) - b.coeff(i)).norm() < 1e-11, "nu={nu} i={i}");
            }
        }
    }

    #[test]
    fn order_derivative_matches_difference() {
        let h = 1e-5;
        for &x in &[2.0, 30.0] {
            let jet = bessel_jet(BesselKind::J, Jet::variable(3.0), x);
            let fd = (bessel_j(3.0 + h, x) - bessel_j(3.0 - h, x)) / (2.0 * h);
            assert!((jet.coeff(1).re - fd).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn recurrence_in_order() {
        // J_{nu-1} + J_{nu+1} = 2 nu / x J_nu
        let (nu, x) = (4.25, 17.0);
        let lhs = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x);
        assert!(close(lhs, 2.0 * nu / x * bessel_j(nu, x), 1e-12));
    }

    #[test]
    fn small_argument_behavior() {
        assert!(close(bessel_j(1.0, 1e-6), 5e-7, 1e-12));
        let x: f64 = 1e-2;
        assert!((bessel_i(1.0, x) - bessel_j(1.0, x)).abs() < x.powi(3));
        assert!(close(bessel_j(1.0, 1.0), 0.440_050_585_744_933_5, 1e-14));
    }
}
