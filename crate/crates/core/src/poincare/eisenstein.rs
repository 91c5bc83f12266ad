use super::{EvalPoint, Kahan, TruncationPolicy};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::special::gamma_jet;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// `E_k(z,s) = sum' y^s (cz+d)^{-k} |cz+d|^{-2s}` over the box
/// `max(|c|,|d|) <= bound`.
pub fn eisenstein_lattice(
    k: i64,
    z: EvalPoint,
    s: Complex64,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    Ok(eisenstein_lattice_with_tail(k, z, s, policy)?.0)
}

/// As [`eisenstein_lattice`], also returning an estimate of the dropped tail
/// from the last doubling of the box.
pub fn eisenstein_lattice_with_tail(
    k: i64,
    z: EvalPoint,
    s: Complex64,
    policy: &TruncationPolicy,
) -> Result<(Complex64, f64)> {
    policy.validate()?;
    if k % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "weight must be even, got {k}"
        )));
    }
    let p = 2.0 * s.re + k as f64 - 2.0;
    if p <= 0.0 {
        return Err(Error::RequiresContinuation(format!(
            "lattice sum needs Re(2s + k) > 2, got k={k}, s={s}"
        )));
    }
    let bound = policy.lattice_bound();
    let half = bound / 2;
    let zc = z.z();
    let ys = (s * z.y.ln()).exp();
    let term = |c: i64, d: i64| {
        let w = zc * c as f64 + d as f64;
        let a = w.norm_sqr().ln();
        w.powi(-k as i32) * (-s * a).exp()
    };
    // rows c >= 1 with every d, then c = 0 with d >= 1; the other half is
    // the mirror image (c,d) -> (-c,-d), equal for even k
    let rows: Vec<(Complex64, Complex64)> = (0..=bound)
        .into_par_iter()
        .map(|c| {
            let (mut inner, mut outer) = (Kahan::default(), Kahan::default());
            let d_lo = if c == 0 { 1 } else { -bound };
            for d in d_lo..=bound {
                let t = term(c, d);
                if c <= half && d.abs() <= half {
                    inner.add(t);
                } else {
                    outer.add(t);
                }
            }
            (inner.sum, outer.sum)
        })
        .collect();
    let (mut inner, mut outer) = (Kahan::default(), Kahan::default());
    for (a, b) in rows {
        inner.add(a);
        outer.add(b);
    }
    let total = (inner.sum + outer.sum) * ys * 2.0;
    let shell = (outer.sum * ys * 2.0).norm();
    let ratio = 2f64.powf(-p);
    Ok((total, shell * ratio / (1.0 - ratio)))
}

/// `(s + k/2)(s + k/2 - 1) pi^{-(s+k/2)} Gamma(s + k/2 + |k|/2) E_k(z,s)`.
pub fn complete_eisenstein(
    k: i64,
    z: EvalPoint,
    s: Complex64,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let e = eisenstein_lattice(k, z, s, policy)?;
    Ok(completion_factor(k, s)? * e)
}

pub(crate) fn completion_factor(k: i64, s: Complex64) -> Result<Complex64> {
    let h = s + k as f64 / 2.0;
    let g = gamma_jet(Jet::constant(h + k.abs() as f64 / 2.0))?.value();
    Ok(h * (h - 1.0) * (-h * PI.ln()).exp() * g)
}
