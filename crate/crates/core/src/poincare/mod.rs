//! Maass-Poincare series `P_{k,m}(z,s)`, the Taylor coefficients
//! `F_{k,m,r}` / `G_{k,m,r}` and real-analytic Eisenstein series.

mod eisenstein;
mod expansion;
mod taylor;

pub use eisenstein::{complete_eisenstein, eisenstein_lattice, eisenstein_lattice_with_tail};
pub use expansion::FourierWhittakerExpansion;
pub use taylor::{taylor_expansion, tilde_combination, TildeKind};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::kloosterman::{g_coeff, l_bank, l_values};
use crate::special::whittaker::{whittaker_m_jet, whittaker_m_scalar, whittaker_w_jet};
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A point `z = x + iy` of the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub x: f64,
    pub y: f64,
}

impl EvalPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "evaluation point needs finite x and y > 0, got ({x}, {y})"
            )));
        }
        Ok(EvalPoint { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// Parameters of `P_{k,m}(z,s)`; `r` selects a Taylor coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoincareSpec {
    pub k: i64,
    pub m: i64,
    pub r: usize,
    pub s: Complex64,
}

impl PoincareSpec {
    pub fn new(k: i64, m: i64, r: usize, s: Complex64) -> Result<Self> {
        if k % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "weight must be even, got {k}"
            )));
        }
        if m == 0 {
            return Err(Error::Unsupported(
                "m = 0 is the Eisenstein case; use the closed forms or the lattice sum".into(),
            ));
        }
        Ok(PoincareSpec { k, m, r, s })
    }

    /// The special point: `k/2` for `k >= 2`, `1 - k/2` for `k <= 0`.
    pub fn base_point(k: i64) -> f64 {
        if k >= 2 {
            k as f64 / 2.0
        } else {
            1.0 - k as f64 / 2.0
        }
    }
}

/// Truncation knobs shared by every numerical routine.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Last modulus of the Kloosterman series; also sets the coset and lattice bounds.
    pub c_max: u64,
    /// Fourier indices kept are `|n| <= n_max`.
    pub n_max: i64,
    pub fd_step_s: f64,
    pub fd_step_z: f64,
    pub target_tol: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            c_max: 10_000,
            n_max: 30,
            fd_step_s: 1e-3,
            fd_step_z: 1e-4,
            target_tol: 1e-6,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        let ok = self.c_max > 0
            && self.n_max > 0
            && self.fd_step_s > 0.0
            && self.fd_step_z > 0.0
            && self.target_tol > 0.0;
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "truncation policy fields must be positive: {self:?}"
            )));
        }
        Ok(())
    }

    /// Radius `R` of the coset sum: terms with `|cz+d| > R` are dropped.
    pub fn coset_radius(&self) -> f64 {
        (self.c_max as f64 / 20.0).max(50.0)
    }

    /// Box size of the Eisenstein lattice sum.
    pub fn lattice_bound(&self) -> i64 {
        ((self.c_max / 50) as i64).max(50)
    }
}

/// `phi_{k,m}(z,s) = (4 pi y)^{-k/2} M_{sgn(m)k/2, s-1/2}(4 pi |m| y) e(mx)`.
pub fn phi_eval(k: i64, m: i64, z: EvalPoint, s: Complex64) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::InvalidArgument("phi_{k,m} needs m != 0".into()));
    }
    let mu = Complex64::new(m.signum() as f64 * k as f64 / 2.0, 0.0);
    let t = 4.0 * PI * m.unsigned_abs() as f64 * z.y;
    let mm = whittaker_m_jet(mu, Jet::constant(s - 0.5), t)?.value();
    Ok(mm * (4.0 * PI * z.y).powf(-(k as f64) / 2.0) * expi(2.0 * PI * m as f64 * z.x))
}

fn expi(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: Complex64,
    c: Complex64,
}

impl Kahan {
    fn add(&mut self, x: Complex64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Partial coset sum `sum phi_{k,m}|_k gamma` over `|cz+d| <= R`.
pub fn poincare_direct(
    spec: PoincareSpec,
    z: EvalPoint,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    policy.validate()?;
    if spec.s.re <= 1.0 {
        return Err(Error::OutsideDirectSum(format!(
            "the coset sum converges only for Re s > 1, got s = {}",
            spec.s
        )));
    }
    let (k, m, s) = (spec.k, spec.m, spec.s);
    let mu = Complex64::new(m.signum() as f64 * k as f64 / 2.0, 0.0);
    let nu = s - 0.5;
    let kf = k as f64;
    let scale_m = 4.0 * PI * m.unsigned_abs() as f64;
    // phi with the Whittaker prefactor folded in, valid for any image point
    let phi = |w: Complex64| {
        let mm = whittaker_m_scalar(mu, nu, scale_m * w.im);
        mm * (4.0 * PI * w.im).powf(-kf / 2.0) * expi(2.0 * PI * m as f64 * w.re)
    };
    let zc = z.z();
    let radius = policy.coset_radius();
    let c_top = (radius / z.y).floor() as i64;
    let per_c: Vec<Complex64> = (1..=c_top)
        .into_par_iter()
        .map(|c| {
            let cf = c as f64;
            let room = radius * radius - (cf * z.y).powi(2);
            let mut acc = Kahan::default();
            if room < 0.0 {
                return acc.sum;
            }
            let w = room.sqrt();
            let centre = -cf * z.x;
            let (lo, hi) = ((centre - w).ceil() as i64, (centre + w).floor() as i64);
            for d in lo..=hi {
                if c.gcd(&d) != 1 {
                    continue;
                }
                // a d - b c = 1
                let e = d.extended_gcd(&c);
                let (a, b) = if e.gcd == 1 { (e.x, -e.y) } else { (-e.x, e.y) };
                let den = zc * cf + d as f64;
                let gz = (zc * a as f64 + b as f64) / den;
                acc.add(den.powi(-k as i32) * phi(gz));
            }
            acc.sum
        })
        .collect();
    let mut total = Kahan::default();
    total.add(phi(zc));
    for v in per_c {
        total.add(v);
    }
    Ok(total.sum)
}

/// `P_{k,m}(z,s)` from its Fourier expansion, truncated at `|n| <= n_max`.
pub fn poincare_fourier(
    spec: PoincareSpec,
    z: EvalPoint,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    policy.validate()?;
    let (k, m, s) = (spec.k, spec.m, spec.s);
    let n_max = policy.n_max.max(m.abs());
    let ns: Vec<i64> = (-n_max..=n_max).collect();
    let ls: Vec<Complex64> = if s.im == 0.0 {
        let bank = l_bank(m, s.re, n_max, policy.c_max)?;
        ns.iter().map(|&n| bank.get(n).value()).collect()
    } else {
        l_values(m, &ns, s, policy.c_max)?.0
    };
    let kf = k as f64;
    // (-4 pi y)^{-k/2} with (-1)^{-k/2} = (-1)^{k/2}
    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let pref = sign * (4.0 * PI * z.y).powf(-kf / 2.0);
    let mut acc = Kahan::default();
    acc.add(phi_eval(k, m, z, s)?);
    for (&n, &l) in ns.iter().zip(&ls) {
        let g = g_coeff(k, m, n, s)?;
        let gl = g * l;
        if gl == Complex64::new(0.0, 0.0) {
            continue;
        }
        let shape = if n == 0 {
            ((1.0 - s) * z.y.ln()).exp()
        } else {
            let mu = Complex64::new(n.signum() as f64 * kf / 2.0, 0.0);
            let t = 4.0 * PI * n.unsigned_abs() as f64 * z.y;
            whittaker_w_jet(mu, Jet::constant(s - 0.5), t)?.value()
        };
        acc.add(gl * pref * shape * expi(2.0 * PI * n as f64 * z.x));
    }
    Ok(acc.sum)
}
