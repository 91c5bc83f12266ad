//! The `xi_k` and `Delta_k` operators, as finite-difference stencils on
//! sampled functions and as exact rules on Fourier-Whittaker tables.
//!
//! On tables the rules follow from `xi_k(u(y) e(nx)) = y^k (u' + 2 pi n u) e(-nx)`,
//! the Whittaker lowering relations and the evenness of `W` and `M+` in `nu`.
//! Because `u^{[j]}_{2-k,-n}` is an `s`-derivative at `s = 1 - k/2` while the
//! input is differentiated at `s = k/2`, every target order `i` picks up a
//! reflection sign `(-1)^i` for `n != 0`. `M+` is not real on the positive
//! axis: `conj(M+_{mu,nu}) = M+_{mu,nu} - 2i (-1)^mu pi W_{mu,nu} / (G(1-s+mu) G(s+mu))`,
//! so `+` entries also feed `-` entries of the image.

use crate::error::{Error, Result};
use crate::jet::{factorial, Jet};
use crate::poincare::{EvalPoint, FourierWhittakerExpansion};
use crate::special::{rgamma_jet, u_jet, Sign};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

type Evaluator = Arc<dyn Fn(EvalPoint) -> Result<Complex64> + Send + Sync>;

/// A weight-`k` function known only through point evaluations.
#[derive(Clone)]
pub struct SampledForm {
    pub k: i64,
    eval: Evaluator,
}

impl SampledForm {
    pub fn new<F>(k: i64, f: F) -> Self
    where
        F: Fn(EvalPoint) -> Result<Complex64> + Send + Sync + 'static,
    {
        SampledForm {
            k,
            eval: Arc::new(f),
        }
    }

    pub fn from_expansion(e: FourierWhittakerExpansion) -> Self {
        let k = e.k;
        SampledForm::new(k, move |z| e.eval(z))
    }

    pub fn eval(&self, z: EvalPoint) -> Result<Complex64> {
        (self.eval)(z)
    }
}

struct Partials {
    f: Complex64,
    fx: Complex64,
    fy: Complex64,
    fxx: Complex64,
    fyy: Complex64,
}

/// Fourth-order central stencils with step `h * y`.
fn partials(f: &SampledForm, z: EvalPoint, h: f64, second: bool) -> Result<Partials> {
    let step = h * z.y;
    if !(h > 0.0) || step >= z.y / 4.0 {
        return Err(Error::StencilOutsideDomain(format!(
            "step {step} at y = {} (need 0 < h y < y/4)",
            z.y
        )));
    }
    let at = |dx: f64, dy: f64| {
        f.eval(EvalPoint {
            x: z.x + dx,
            y: z.y + dy,
        })
    };
    let d1 = |m2: Complex64, m1: Complex64, p1: Complex64, p2: Complex64| {
        (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * step)
    };
    let (xm2, xm1, xp1, xp2) = (
        at(-2.0 * step, 0.0)?,
        at(-step, 0.0)?,
        at(step, 0.0)?,
        at(2.0 * step, 0.0)?,
    );
    let (ym2, ym1, yp1, yp2) = (
        at(0.0, -2.0 * step)?,
        at(0.0, -step)?,
        at(0.0, step)?,
        at(0.0, 2.0 * step)?,
    );
    let c = if second {
        at(0.0, 0.0)?
    } else {
        Complex64::new(0.0, 0.0)
    };
    let d2 = |m2: Complex64, m1: Complex64, p1: Complex64, p2: Complex64| {
        ((m1 + p1) * 16.0 - m2 - p2 - c * 30.0) / (12.0 * step * step)
    };
    Ok(Partials {
        f: c,
        fx: d1(xm2, xm1, xp1, xp2),
        fy: d1(ym2, ym1, yp1, yp2),
        fxx: d2(xm2, xm1, xp1, xp2),
        fyy: d2(ym2, ym1, yp1, yp2),
    })
}

/// `xi_k f = 2i y^k conj(df/dz-bar)` by central differences.
pub fn xi_numeric(f: &SampledForm, z: EvalPoint, h: f64) -> Result<Complex64> {
    let p = partials(f, z, h, false)?;
    let i = Complex64::new(0.0, 1.0);
    Ok(i * z.y.powi(f.k as i32) * (p.fx + i * p.fy).conj())
}

/// `Delta_k f = -y^2 (f_xx + f_yy) + i k y (f_x + i f_y)`.
pub fn laplacian_numeric(f: &SampledForm, z: EvalPoint, h: f64) -> Result<Complex64> {
    let p = partials(f, z, h, true)?;
    let _ = p.f;
    let i = Complex64::new(0.0, 1.0);
    Ok(-(p.fxx + p.fyy) * z.y * z.y + i * (f.k as f64 * z.y) * (p.fx + i * p.fy))
}

fn refl(i: usize) -> f64 {
    if i % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `xi_k` on a table; the result has weight `2 - k` and the same depth bound.
/// `xi_k` is antilinear, so coefficients are conjugated.
pub fn xi_on_expansion(e: &FourierWhittakerExpansion) -> Result<FourierWhittakerExpansion> {
    let k = e.k;
    let kf = k as f64;
    let mut out = FourierWhittakerExpansion::new(2 - k, e.r)?;
    for sign in [Sign::Minus, Sign::Plus] {
        for (n, j, c) in e.entries(sign) {
            let c = c.conj();
            let jf = j as f64;
            // lowering branch: d^j/ds^j [(s - k/2)(1 - k/2 - s) V(s)] at s = k/2
            let lowering =
                |emit: &mut dyn FnMut(Sign, usize, f64) -> Result<()>, ts: Sign| -> Result<()> {
                    if j >= 1 {
                        emit(ts, j - 1, jf * (1.0 - kf) * refl(j - 1))?;
                    }
                    if j >= 2 {
                        emit(ts, j - 2, -jf * (jf - 1.0) * refl(j - 2))?;
                    }
                    Ok(())
                };
            let is_lowering = matches!((sign, n.signum()), (Sign::Minus, 1) | (Sign::Plus, -1));
            if sign == Sign::Plus && n != 0 {
                // conj(M+) = M+ - 2i kappa W: the part of conj(xi image) along W
                let mu_t = (-n).signum() * (2 - k) / 2;
                let s = Jet::variable(kf / 2.0);
                let kappa = (rgamma_jet(-s + (1 + mu_t) as f64) * rgamma_jet(s + mu_t as f64))
                    .scale(PI * refl(mu_t.unsigned_abs() as usize));
                let factor = if is_lowering {
                    (s - kf / 2.0) * (-s + (1.0 - kf / 2.0))
                } else {
                    Jet::constant(-1.0)
                };
                let pk = factor * kappa;
                for i in 0..=j {
                    let w = Complex64::new(0.0, -2.0)
                        * pk.coeff(j - i)
                        * (factorial(j) / factorial(i) * refl(i));
                    if w != Complex64::new(0.0, 0.0) {
                        out.add_to(Sign::Minus, -n, i, c * w)?;
                    }
                }
            }
            let mut emit = |ts: Sign, i: usize, f: f64| -> Result<()> {
                if f != 0.0 {
                    out.add_to(ts, -n, i, c * f)?;
                }
                Ok(())
            };
            match (sign, n.signum()) {
                _ if is_lowering => lowering(&mut emit, sign)?,
                (Sign::Minus, -1) | (Sign::Plus, 1) => emit(sign, j, -refl(j))?,
                (Sign::Minus, 0) => {
                    let s = refl(j);
                    emit(Sign::Plus, j, s * (1.0 - kf))?;
                    if j >= 1 {
                        emit(Sign::Plus, j - 1, s * jf)?;
                    }
                }
                (Sign::Plus, 0) => {
                    if j >= 1 {
                        emit(Sign::Minus, j - 1, -refl(j) * jf)?;
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    Ok(out)
}

/// `Delta_k = -xi_{2-k} xi_k` on a table.
pub fn laplacian_on_expansion(e: &FourierWhittakerExpansion) -> Result<FourierWhittakerExpansion> {
    Ok(xi_on_expansion(&xi_on_expansion(e)?)?.scale(Complex64::new(-1.0, 0.0)))
}

/// Contribution at height 1, relative to the largest one, below which a table
/// entry counts as zero in [`depth_classify`].
pub const DEPTH_ZERO_TOL: f64 = 1e-7;

/// Depth of a table: the least `r` with `Delta_k^r e = 0`, lowered by `1/2`
/// when `c^-_{n,r-1} = 0` for all `n <= 0` and `c^+_{n,r-1} = 0` for all `n > 0`.
/// The zero table has depth 0.
pub fn depth_classify(e: &FourierWhittakerExpansion) -> Result<f64> {
    depth_classify_with_tol(e, DEPTH_ZERO_TOL)
}

pub fn depth_classify_with_tol(e: &FourierWhittakerExpansion, tol: f64) -> Result<f64> {
    // entries are compared by their contribution |c u^{[j]}_{k,n}(1)| at height 1,
    // since raw coefficients of different rows differ by many orders of magnitude
    let weights = |t: &FourierWhittakerExpansion| -> Result<Vec<(Sign, i64, usize, f64)>> {
        let mut out = Vec::new();
        for sign in [Sign::Minus, Sign::Plus] {
            let mut jets: BTreeMap<i64, (Jet, usize)> = BTreeMap::new();
            for (n, j, c) in t.entries(sign) {
                let (jet, kept) = match jets.entry(n) {
                    std::collections::btree_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(u_jet(t.k, n, sign, 1.0)?)
                    }
                };
                let u = if j < *kept {
                    jet.derivative(j).norm()
                } else {
                    1.0
                };
                out.push((sign, n, j, c.norm() * u));
            }
        }
        Ok(out)
    };
    let w0 = weights(e)?;
    let scale = w0.iter().fold(0.0f64, |a, w| a.max(w.3));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let is_zero = |t: &FourierWhittakerExpansion| -> Result<bool> {
        Ok(weights(t)?.iter().all(|w| w.3 <= tol * scale))
    };
    let mut r = 0usize;
    let mut cur = e.clone();
    while !is_zero(&cur)? {
        r += 1;
        if r > e.r + 1 {
            return Err(Error::Unsupported(format!(
                "Laplacian did not annihilate the table within {} steps",
                e.r + 1
            )));
        }
        cur = laplacian_on_expansion(&cur)?;
    }
    let top = r - 1;
    let half = w0.iter().all(|&(sign, n, j, w)| {
        let constrained =
            j == top && matches!((sign, n > 0), (Sign::Minus, false) | (Sign::Plus, true));
        !constrained || w <= tol * scale
    });
    Ok(if half { r as f64 - 0.5 } else { r as f64 })
}
