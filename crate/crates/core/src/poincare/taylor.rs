use super::{FourierWhittakerExpansion, PoincareSpec, TruncationPolicy};
use crate::error::{Error, Result};
use crate::jet::{factorial, Jet};
use crate::kloosterman::{g_jet, l_bank};
use crate::modforms::{a_coeff_f64, ell_index};
use crate::special::{gamma_jet, rgamma_jet, Sign};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Highest Taylor index with a full table. `M+` loses one jet order at
/// degenerate parameters, which caps the `u^{[j],+}` orders at `JET_LEN - 2`.
pub const MAX_TAYLOR_R: usize = 4;

/// Table of `F_{k,m,r}` (`k <= 0`) or `G_{k,m,r}` (`k >= 2`), built from
/// `s`-jets of the Gamma prefactors and of `g_{k,m,n} L_{m,n}` at the special
/// point. The result has depth bound `r + 1`.
pub fn taylor_expansion(
    spec: PoincareSpec,
    policy: &TruncationPolicy,
) -> Result<FourierWhittakerExpansion> {
    policy.validate()?;
    let (k, m, r) = (spec.k, spec.m, spec.r);
    if k % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "weight must be even, got {k}"
        )));
    }
    if m == 0 {
        return Err(Error::Unsupported(
            "m = 0 Taylor coefficients exist only as the closed forms F01, G21, Gk0".into(),
        ));
    }
    if r > MAX_TAYLOR_R {
        return Err(Error::Unsupported(format!(
            "Taylor index r = {r} exceeds the supported maximum {MAX_TAYLOR_R}"
        )));
    }
    let f_branch = k <= 0;
    let s_b = PoincareSpec::base_point(k);
    let sigma: f64 = if f_branch { -1.0 } else { 1.0 };
    let kf = k as f64;
    let norm = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 } * (4.0 * PI).powf(-kf / 2.0);
    let s = Jet::variable(s_b);
    let mu = m.signum() as f64 * kf / 2.0;

    let mut out = FourierWhittakerExpansion::new(k, r + 1)?;
    // coefficient of u^{[j]} given the jet A of the s-dependent factor
    let put = |out: &mut FourierWhittakerExpansion, sign: Sign, n: i64, a: &Jet| -> Result<()> {
        for j in 0..=r {
            let c = a.coeff(r - j) * (sigma.powi(j as i32) / factorial(j) * norm);
            out.add_to(sign, n, j, c)?;
        }
        Ok(())
    };

    let g2s = gamma_jet(s.scale(2.0))?;
    let rot = s.scale(Complex64::new(0.0, -PI)).exp();
    let a_w = g2s * rgamma_jet(s + mu) * rot;
    let a_m = g2s * rgamma_jet(s - mu);
    put(&mut out, Sign::Minus, m, &a_w)?;
    put(&mut out, Sign::Plus, m, &a_m)?;

    let n_top = policy.n_max.max(m.abs());
    let bank = l_bank(m, s_b, n_top, policy.c_max)?;
    for n in -n_top..=n_top {
        let a = g_jet(k, m, n, s)? * bank.get(n);
        let sign = if n == 0 && f_branch {
            Sign::Plus
        } else {
            Sign::Minus
        };
        put(&mut out, sign, n, &a)?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TildeKind {
    F,
    G,
}

/// The combinations that hit the Duke-Jenkins basis under `Delta_k^{r-1}`
/// (kind `F`, returns `F~_{k,m,r-1}` for `m <= ell_k`) or under
/// `xi_k Delta_k^{r-1}` (kind `G`, returns `G~_{k,m,r}` for `m > ell_k`).
pub fn tilde_combination(
    kind: TildeKind,
    k: i64,
    m: i64,
    r: usize,
    policy: &TruncationPolicy,
) -> Result<FourierWhittakerExpansion> {
    let ell = ell_index(k)?.ell;
    let kf = k as f64;
    let taylor = |mm: i64, rr: usize| {
        taylor_expansion(
            PoincareSpec::new(k, mm, rr, Complex64::new(0.0, 0.0))?,
            policy,
        )
    };
    match kind {
        TildeKind::F => {
            if k > 0 || m == 0 || m > ell {
                return Err(Error::InvalidArgument(format!(
                    "F~_{{k,m,r-1}} needs k <= 0 and 0 != m <= ell_k = {ell} (k={k}, m={m})"
                )));
            }
            if r == 0 {
                return Err(Error::InvalidArgument("F~_{k,m,r-1} needs r >= 1".into()));
            }
            let weight = |n: i64| (n.unsigned_abs() as f64).powf(-kf / 2.0);
            let mut acc = taylor(m, r - 1)?.scale(weight(m).into());
            for n in (ell + 1)..0 {
                let a = a_coeff_f64(k, -m, n)?;
                if a != 0.0 {
                    acc = acc.add(&taylor(n, r - 1)?.scale((a * weight(n)).into()))?;
                }
            }
            Ok(acc)
        }
        TildeKind::G => {
            if m == 0 {
                return Err(Error::Unsupported(
                    "G~_{k,0,r} is the Eisenstein Taylor coefficient, outside the numerical scope"
                        .into(),
                ));
            }
            if k < 2 || m <= ell {
                return Err(Error::InvalidArgument(format!(
                    "G~_{{k,m,r}} needs k >= 2 and m > ell_k = {ell} (k={k}, m={m})"
                )));
            }
            let weight = |n: i64| (n as f64).powf(kf / 2.0 - 1.0);
            let mut acc = taylor(m, r)?.scale(weight(m).into());
            for n in 1..=ell {
                let a = a_coeff_f64(k, -n, m)?;
                if a != 0.0 {
                    acc = acc.add(&taylor(n, r)?.scale((-a * weight(n)).into()))?;
                }
            }
            Ok(acc)
        }
    }
}
