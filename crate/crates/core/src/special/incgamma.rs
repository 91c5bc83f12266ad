use super::gamma::gamma_real;
use super::whittaker::tricomi_u_jet;
use crate::error::{Error, Result};
use crate::jet::Jet;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Upper incomplete Gamma `Gamma(s, y)` for real `s` and `y > 0`.
pub fn inc_gamma_upper(s: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() || !s.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "inc_gamma_upper needs y > 0, got s={s}, y={y}"
        )));
    }
    if y >= 1.0 {
        let a = Jet::constant(1.0 - s);
        return Ok((-y).exp() * tricomi_u_jet(a, a, y).value().re);
    }
    if s > 0.0 {
        return Ok(gamma_real(s) - lower_series(s, y));
    }
    // recur down from a positive (or zero) base
    let (mut base, mut g) = if s.fract() == 0.0 {
        (0.0, exp_integral_e1(y))
    } else {
        let b = s - s.floor();
        (b, gamma_real(b) - lower_series(b, y))
    };
    while base > s + 0.5 {
        let lower = base - 1.0;
        g = (g - y.powf(lower) * (-y).exp()) / lower;
        base = lower;
    }
    Ok(g)
}

/// `gamma(s, y)` by its power series, `s > 0`.
fn lower_series(s: f64, y: f64) -> f64 {
    let mut term = 1.0 / s;
    let mut sum = term;
    let mut n = 1.0;
    while term.abs() > 1e-17 * sum.abs() {
        term *= y / (s + n);
        sum += term;
        n += 1.0;
    }
    y.powf(s) * (-y).exp() * sum
}

/// `E_1(y)` for small `y`.
fn exp_integral_e1(y: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut n = 1.0;
    loop {
        term *= -y / n;
        let add = term / n;
        sum += add;
        if add.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        n += 1.0;
    }
    -EULER_GAMMA - y.ln() - sum
}
