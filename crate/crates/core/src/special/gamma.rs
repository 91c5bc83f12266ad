use crate::error::{Error, Result};
use crate::jet::Jet;
use num_complex::Complex64;
use std::f64::consts::PI;

/// `B_{2k}` for `k = 1..=10`.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const STIRLING_MIN: f64 = 20.0;

/// Stirling series for `ln Gamma(w)`; accurate to rounding for `Re w >= 20`.
fn ln_gamma_stirling(w: Jet) -> Jet {
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let mut out = (w - 0.5) * w.ln() - w + half_ln_2pi;
    let inv = w.recip();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = (k + 1) as f64;
        out += pow.scale(b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= inv2;
    }
    out
}

/// `1/Gamma(x)` as a jet. Entire, so poles of Gamma give exact zeros in the
/// constant term.
pub fn rgamma_jet(x: Jet) -> Jet {
    let x0 = x.value();
    let shift = if x0.re < STIRLING_MIN {
        (STIRLING_MIN - x0.re).ceil() as usize
    } else {
        0
    };
    let mut prod = Jet::constant(1.0);
    for i in 0..shift {
        prod *= x + i as f64;
    }
    prod * (-ln_gamma_stirling(x + shift as f64)).exp()
}

/// `Gamma(x)` as a jet. Errors at a pole of the constant term.
pub fn gamma_jet(x: Jet) -> Result<Jet> {
    let r = rgamma_jet(x);
    if r.value() == Complex64::new(0.0, 0.0) || is_nonpositive_integer(x.value()) {
        return Err(Error::GammaPole(format!("{}", x.value())));
    }
    Ok(r.recip())
}

/// `ln Gamma(x)` jet for `Re x > 0` (principal branch on the real axis).
pub fn ln_gamma_jet(x: Jet) -> Jet {
    let x0 = x.value();
    let shift = if x0.re < STIRLING_MIN {
        (STIRLING_MIN - x0.re).ceil() as usize
    } else {
        0
    };
    let mut out = ln_gamma_stirling(x + shift as f64);
    for i in 0..shift {
        out -= (x + i as f64).ln();
    }
    out
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Complex Gamma function.
pub fn gamma_fn(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(Error::GammaPole(format!("{s}")));
    }
    Ok(1.0 / rgamma_jet(Jet::constant(s)).value())
}

/// Real Gamma for convenience in closed forms.
pub fn gamma_real(x: f64) -> f64 {
    gamma_fn(Complex64::new(x, 0.0))
        .map(|g| g.re)
        .unwrap_or(f64::INFINITY)
}

/// `zeta(k)` for even `k >= 2` from the Bernoulli closed form.
pub fn zeta_even(k: i64) -> Result<f64> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "zeta_even needs an even k >= 2, got {k}"
        )));
    }
    let b = crate::modforms::bernoulli_f64(k as usize);
    let n = (k / 2) as i32;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let mut fact = 1.0;
    for i in 1..=k {
        fact *= i as f64;
    }
    Ok(sign * b * (2.0 * PI).powi(k as i32) / (2.0 * fact))
}
