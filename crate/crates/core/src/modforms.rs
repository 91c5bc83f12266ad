//! Classical q-expansions and the Duke-Jenkins basis.

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::special::zeta_even;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Bernoulli number `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> BigRational {
    // sum_{j<=m} C(m+1, j) B_j = 0
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b.pop().unwrap()
}

pub fn bernoulli_f64(n: usize) -> f64 {
    crate::qseries::rational_to_f64(&bernoulli(n))
}

/// `sigma_1(n)`.
pub fn divisor_sigma(n: i64) -> Result<i64> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!(
            "divisor_sigma needs n >= 1, got {n}"
        )));
    }
    Ok((1..=n).filter(|d| n % d == 0).sum())
}

/// `sigma_k(n)` exactly.
pub fn sigma_power(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `Delta = q prod (1 - q^n)^24` through `q^n_max`.
pub fn delta_qexp(n_max: i64) -> QSeries {
    // prod (1-q^n) via Euler's pentagonal theorem, then the 24th power
    let len = n_max.max(1) as usize;
    let mut eta = vec![0i64; len];
    eta[0] = 1;
    let mut k = 1i64;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let p1 = k * (3 * k - 1) / 2;
        let p2 = k * (3 * k + 1) / 2;
        if p1 as usize >= len {
            break;
        }
        eta[p1 as usize] += sign;
        if (p2 as usize) < len {
            eta[p2 as usize] += sign;
        }
        k += 1;
    }
    let e = QSeries::from_ints(0, &eta, n_max - 1);
    let e2 = e.mul(&e);
    let e4 = e2.mul(&e2);
    let e8 = e4.mul(&e4);
    let e24 = e8.mul(&e8).mul(&e8);
    e24.shift(1)
}

/// `E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n` through `q^n_max`.
pub fn eisenstein_qexp(k: i64, n_max: i64) -> Result<QSeries> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "Eisenstein series needs an even weight >= 4, got {k}"
        )));
    }
    let factor = -int(2 * k) / bernoulli(k as usize);
    let mut coeffs = vec![BigRational::one()];
    for n in 1..=n_max {
        coeffs.push(&factor * BigRational::from_integer(sigma_power(n as u64, (k - 1) as u32)));
    }
    Ok(QSeries::new(0, coeffs, n_max))
}

/// `sum_{n <= N} sigma_1(n) q^n`.
pub fn e2star_qpart(n_max: i64) -> QSeries {
    let coeffs = (1..=n_max)
        .map(|n| BigRational::from_integer(sigma_power(n as u64, 1)))
        .collect();
    QSeries::new(1, coeffs, n_max)
}

/// `j = E_4^3 / Delta` through `q^n_max`.
pub fn j_qexp(n_max: i64) -> QSeries {
    let e4 = eisenstein_qexp(4, n_max + 2).expect("weight 4");
    let d = delta_qexp(n_max + 2);
    e4.mul(&e4)
        .mul(&e4)
        .mul(&d.inv().expect("Delta is nonzero"))
        .truncate(n_max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub k: i64,
    pub ell: i64,
    pub k_prime: i64,
}

/// Writes `k = 12 ell + k'` with `k'` in `{0, 4, 6, 8, 10, 14}`.
pub fn ell_index(k: i64) -> Result<WeightProfile> {
    if k % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "weight must be even, got {k}"
        )));
    }
    let r = k.rem_euclid(12);
    let k_prime = if r == 2 { 14 } else { r };
    Ok(WeightProfile {
        k,
        ell: (k - k_prime) / 12,
        k_prime,
    })
}

/// `f_k = Delta^ell E_{k'}` through `q^n_max`.
pub fn f_k(k: i64, n_max: i64) -> Result<QSeries> {
    let p = ell_index(k)?;
    let work = n_max + p.ell.abs() + 4;
    let e = if p.k_prime == 0 {
        QSeries::one(work)
    } else {
        eisenstein_qexp(p.k_prime, work)?
    };
    let d = delta_qexp(work);
    let base = if p.ell >= 0 { d } else { d.inv()? };
    Ok(base
        .pow(p.ell.unsigned_abs() as u32)
        .mul(&e)
        .truncate(n_max))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisElement {
    pub k: i64,
    pub m: i64,
    pub expansion: QSeries,
}

impl BasisElement {
    /// `a_k(m, n)`.
    pub fn coefficient(&self, n: i64) -> Result<BigRational> {
        self.expansion.coeff(n)
    }
}

/// `f_{k,m'}` for all `m'` in `[-ell_k, m_max]`, each valid through `q^n_max`.
pub fn duke_jenkins_family(k: i64, m_max: i64, n_max: i64) -> Result<Vec<QSeries>> {
    let p = ell_index(k)?;
    let lo = -p.ell;
    if m_max < lo {
        return Err(Error::NoSuchBasisElement {
            k,
            m: m_max,
            min: lo,
        });
    }
    let steps = m_max - lo;
    let fk = f_k(k, n_max + steps + 1)?;
    let j = j_qexp(fk.known_through() + m_max.abs() + 2);
    let mut fam: Vec<QSeries> = vec![fk];
    for m in lo + 1..=m_max {
        let mut next = fam.last().unwrap().mul(&j);
        // clear q^e for -m < e <= ell using the earlier elements
        for e in (-m + 1)..=p.ell {
            let c = next.coeff(e)?;
            if !c.is_zero() {
                let f = &fam[(-e - lo) as usize];
                next = &next - &f.scale(&c);
            }
        }
        fam.push(next);
    }
    Ok(fam.into_iter().map(|f| f.truncate(n_max)).collect())
}

/// The Duke-Jenkins basis element `f_{k,m} = q^{-m} + sum_{n > ell_k} a_k(m,n) q^n`.
pub fn duke_jenkins(k: i64, m: i64, n_max: i64) -> Result<BasisElement> {
    let fam = duke_jenkins_family(k, m, n_max)?;
    Ok(BasisElement {
        k,
        m,
        expansion: fam.into_iter().last().unwrap(),
    })
}

/// Faber polynomial `j_m = q^m + O(q)` for `m <= 0`.
pub fn faber_poly(m: i64, n_max: i64) -> Result<QSeries> {
    if m > 0 {
        return Err(Error::InvalidArgument(format!(
            "faber_poly needs m <= 0, got {m}"
        )));
    }
    if m == 0 {
        return Ok(QSeries::one(n_max));
    }
    Ok(duke_jenkins(0, -m, n_max)?.expansion)
}

pub fn q_of(z: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * z).exp()
}

/// `log|eta(z)|` from the product, `n_max` factors.
pub fn log_abs_eta(z: Complex64, n_max: usize) -> f64 {
    let q = q_of(z);
    let mut acc = -2.0 * PI * z.im / 24.0;
    let mut qn = q;
    for _ in 0..n_max {
        acc += (1.0 - qn).norm().ln();
        qn *= q;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    F01,
    G21,
    Gk0,
    F0NegM0,
    F0Neg10,
}

impl std::str::FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F01" => Ok(Self::F01),
            "G21" => Ok(Self::G21),
            "Gk0" => Ok(Self::Gk0),
            "F0_neg_m_0" => Ok(Self::F0NegM0),
            "F0_neg1_0" => Ok(Self::F0Neg10),
            _ => Err(Error::InvalidArgument(format!(
                "unknown closed form {s:?}; expected F01, G21, Gk0, F0_neg_m_0 or F0_neg1_0"
            ))),
        }
    }
}

/// Numerical value of a closed-form polyharmonic Maass form at `z`, with
/// q-expansions truncated at `q^n_max`.
pub fn closed_form_eval(
    name: ClosedForm,
    k: i64,
    m: i64,
    z: Complex64,
    n_max: i64,
) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "z must lie in the upper half plane: {z}"
        )));
    }
    let q = q_of(z);
    let y = z.im;
    Ok(match name {
        ClosedForm::F01 => Complex64::new(
            EULER_GAMMA + 1.0 - (4.0 * PI).ln() - y.ln() - 4.0 * log_abs_eta(z, n_max as usize),
            0.0,
        ),
        ClosedForm::G21 => {
            Complex64::new(PI / 3.0 - 1.0 / y, 0.0) - 8.0 * PI * e2star_qpart(n_max).eval_q(q)
        }
        ClosedForm::Gk0 => {
            let e = eisenstein_qexp(k, n_max)?.eval_q(q);
            let c = (k as f64 / 2.0 - 1.0)
                * crate::jet::factorial(k as usize)
                * PI.powf(-(k as f64) / 2.0)
                * zeta_even(k)?;
            e * c
        }
        ClosedForm::F0NegM0 => {
            if m < 1 {
                return Err(Error::InvalidArgument(format!(
                    "F0_neg_m_0 needs m >= 1, got {m}"
                )));
            }
            faber_poly(-m, n_max)?.eval_q(q) + 24.0 * divisor_sigma(m)? as f64
        }
        ClosedForm::F0Neg10 => j_qexp(n_max).eval_q(q) - 720.0,
    })
}

/// `a_k(m, n)` as a float.
pub fn a_coeff_f64(k: i64, m: i64, n: i64) -> Result<f64> {
    let f = duke_jenkins(k, m, n.max(0))?;
    Ok(crate::qseries::rational_to_f64(&f.coefficient(n)?))
}
