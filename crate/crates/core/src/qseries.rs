//! Exact truncated Laurent series in `q` over the rationals.
//!
//! A [`QSeries`] is valid modulo `q^{known_through + 1}`. Every operation
//! computes the tightest order through which its result is provably correct
//! and never stores coefficients beyond it.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    /// Exponent of `coeffs[0]`. For the zero series this is `known_through + 1`.
    leading: i64,
    coeffs: Vec<BigRational>,
    known_through: i64,
}

impl QSeries {
    /// Builds a series from raw coefficients starting at `q^leading`,
    /// dropping zeros at both ends and anything past `known_through`.
    pub fn new(leading: i64, coeffs: Vec<BigRational>, known_through: i64) -> Self {
        let mut coeffs = coeffs;
        let keep = (known_through - leading + 1).max(0) as usize;
        coeffs.truncate(keep);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero(known_through);
        }
        coeffs.drain(..lead_zeros);
        QSeries {
            leading: leading + lead_zeros as i64,
            coeffs,
            known_through,
        }
    }

    pub fn from_ints(leading: i64, coeffs: &[i64], known_through: i64) -> Self {
        let c = coeffs
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        Self::new(leading, c, known_through)
    }

    pub fn zero(known_through: i64) -> Self {
        QSeries {
            leading: known_through.saturating_add(1),
            coeffs: Vec::new(),
            known_through,
        }
    }

    pub fn one(known_through: i64) -> Self {
        Self::monomial(BigRational::one(), 0, known_through)
    }

    /// `c q^e`.
    pub fn monomial(c: BigRational, e: i64, known_through: i64) -> Self {
        Self::new(e, vec![c], known_through)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first nonzero term (`known_through + 1` if zero).
    pub fn leading_exponent(&self) -> i64 {
        self.leading
    }

    pub fn known_through(&self) -> i64 {
        self.known_through
    }

    /// Stored coefficients from the leading exponent on.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Exact coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> Result<BigRational> {
        if n > self.known_through {
            return Err(Error::BeyondTruncation {
                requested: n,
                known_through: self.known_through,
            });
        }
        Ok(self.raw(n))
    }

    fn raw(&self, n: i64) -> BigRational {
        if n < self.leading {
            return BigRational::zero();
        }
        self.coeffs
            .get((n - self.leading) as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Forget everything past `q^n`.
    pub fn truncate(&self, n: i64) -> Self {
        let kt = self.known_through.min(n);
        Self::new(self.leading, self.coeffs.clone(), kt)
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        QSeries {
            leading: self.leading + e,
            coeffs: self.coeffs.clone(),
            known_through: self.known_through + e,
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero(self.known_through);
        }
        QSeries {
            leading: self.leading,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
            known_through: self.known_through,
        }
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let kt = self.known_through.min(other.known_through);
        let lo = self.leading.min(other.leading);
        if lo > kt {
            return Self::zero(kt);
        }
        let coeffs = (lo..=kt)
            .map(|n| {
                let b = other.raw(n);
                if sign > 0 {
                    self.raw(n) + b
                } else {
                    self.raw(n) - b
                }
            })
            .collect();
        Self::new(lo, coeffs, kt)
    }

    /// Cauchy product; valid through
    /// `min(kt_a + lead_b, kt_b + lead_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let kt = (self.known_through + other.leading).min(other.known_through + self.leading);
        if self.is_zero() || other.is_zero() {
            return Self::zero(kt);
        }
        let lead = self.leading + other.leading;
        let len = (kt - lead + 1).max(0) as usize;
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(lead, out, kt)
    }

    /// Multiplicative inverse; valid through `known_through - 2 leading`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroSeries);
        }
        let lead = self.leading;
        let kt = self.known_through - 2 * lead;
        let len = (self.known_through - lead + 1) as usize;
        let a0_inv = self.coeffs[0].recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(len);
        for n in 0..len {
            if n == 0 {
                b.push(a0_inv.clone());
                continue;
            }
            let mut acc = BigRational::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &b[n - k];
                }
            }
            b.push(-acc * &a0_inv);
        }
        Ok(Self::new(-lead, b, kt))
    }

    /// `q d/dq`.
    pub fn qderiv(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(self.leading + i as i64)))
            .collect();
        Self::new(self.leading, coeffs, self.known_through)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(i64::MAX / 4);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Numerically sums the stored terms at `q`.
    pub fn eval_q(&self, q: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut qp = q.powi(self.leading as i32);
        for c in &self.coeffs {
            acc += qp * rational_to_f64(c);
            qp *= q;
        }
        acc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("series JSON")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: QSeriesRepr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_repr(r)
    }

    fn to_repr(&self) -> QSeriesRepr {
        QSeriesRepr {
            leading: self.leading,
            known_through: self.known_through,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| format!("{}/{}", c.numer(), c.denom()))
                .collect(),
        }
    }

    fn from_repr(r: QSeriesRepr) -> Result<Self> {
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(r.leading, coeffs, r.known_through))
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    if let Some(v) = c.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // fall back through the integer parts for huge numerators/denominators
    let n = c.numer().to_f64().unwrap_or(f64::INFINITY);
    let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        let shift = c.numer().bits().max(c.denom().bits()).saturating_sub(1000) as usize;
        let n = (c.numer().abs() >> shift).to_f64().unwrap_or(0.0)
            * c.numer().signum().to_f64().unwrap_or(1.0);
        let d = (c.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct QSeriesRepr {
    leading: i64,
    known_through: i64,
    coeffs: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = QSeriesRepr::deserialize(d)?;
        Self::from_repr(r).map_err(serde::de::Error::custom)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        self.combine(o, 1)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        self.combine(o, -1)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        QSeries::mul(self, o)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&-BigRational::one())
    }
}

pub fn qs_mul(a: &QSeries, b: &QSeries) -> QSeries {
    a.mul(b)
}

pub fn qs_inv(a: &QSeries) -> Result<QSeries> {
    a.inv()
}

pub fn qs_qderiv(a: &QSeries) -> QSeries {
    a.qderiv()
}

pub fn qs_coeff(a: &QSeries, n: i64) -> Result<BigRational> {
    a.coeff(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn difference_of_squares() {
        let a = QSeries::from_ints(0, &[1, 1], 10);
        let b = QSeries::from_ints(0, &[1, -1], 10);
        assert_eq!(a.mul(&b), QSeries::from_ints(0, &[1, 0, -1], 10));
    }

    #[test]
    fn exponent_cancellation() {
        let a = QSeries::from_ints(-1, &[1], 10);
        let b = QSeries::from_ints(1, &[1], 10);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0).unwrap(), r(1));
        assert_eq!(p.leading_exponent(), 0);
    }

    #[test]
    fn sigma_square_cross_term() {
        let s = QSeries::from_ints(1, &[1, 3, 4, 7], 4);
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(2).unwrap(), r(1));
        assert_eq!(sq.known_through(), 5);
    }

    #[test]
    fn geometric_inverse() {
        let a = QSeries::from_ints(0, &[1, -1], 8);
        let inv = a.inv().unwrap();
        for n in 0..=8 {
            assert_eq!(inv.coeff(n).unwrap(), r(1));
        }
        assert!(inv.coeff(9).is_err());
    }

    #[test]
    fn inverse_of_q() {
        let inv = QSeries::from_ints(1, &[1], 5).inv().unwrap();
        assert_eq!(inv.leading_exponent(), -1);
        assert_eq!(inv.coeff(-1).unwrap(), r(1));
        assert_eq!(inv.known_through(), 3);
    }

    #[test]
    fn zero_inverse_is_an_error() {
        assert!(matches!(
            QSeries::zero(5).inv(),
            Err(Error::DivisionByZeroSeries)
        ));
    }

    #[test]
    fn qderiv_examples() {
        let a = QSeries::from_ints(-1, &[1], 5).qderiv();
        assert_eq!(a.coeff(-1).unwrap(), r(-1));
        assert!(QSeries::one(5).qderiv().is_zero());
    }

    #[test]
    fn beyond_truncation() {
        let a = QSeries::from_ints(0, &[1, 2], 3);
        assert_eq!(a.coeff(1).unwrap(), r(2));
        assert_eq!(a.coeff(3).unwrap(), r(0));
        assert!(matches!(a.coeff(4), Err(Error::BeyondTruncation { .. })));
        let b = QSeries::from_ints(-2, &[1, 5], 3);
        assert_eq!(b.coeff(-2).unwrap(), r(1));
    }

    #[test]
    fn json_round_trip() {
        let a = QSeries::new(
            -1,
            vec![r(1), BigRational::new(BigInt::from(-3), BigInt::from(7))],
            4,
        );
        let s = a.to_json();
        assert_eq!(
            s,
            r#"{"leading":-1,"known_through":4,"coeffs":["1/1","-3/7"]}"#
        );
        assert_eq!(QSeries::from_json(&s).unwrap(), a);
        assert!(QSeries::from_json(r#"{"leading":0,"known_through":1,"coeffs":["1/0"]}"#).is_err());
    }

    fn arb_series() -> impl Strategy<Value = QSeries> {
        (-2i64..3, prop::collection::vec(-20i64..20, 1..8), 0i64..4).prop_map(|(lead, c, extra)| {
            let kt = lead + c.len() as i64 - 1 + extra;
            QSeries::from_ints(lead, &c, kt)
        })
    }

    fn arb_unit() -> impl Strategy<Value = QSeries> {
        (prop::collection::vec(-9i64..9, 0..7), 1i64..5).prop_map(|(mut c, c0)| {
            c.insert(0, c0);
            let kt = c.len() as i64 + 2;
            QSeries::from_ints(0, &c, kt)
        })
    }

    /// Equality on the common known range.
    fn agree(a: &QSeries, b: &QSeries) -> bool {
        let kt = a.known_through().min(b.known_through());
        let lo = a.leading_exponent().min(b.leading_exponent()).min(kt);
        (lo..=kt).all(|n| a.coeff(n).unwrap() == b.coeff(n).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn multiplication_is_associative(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert!(agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        }

        #[test]
        fn multiplication_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
            let lhs = a.mul(&(&b + &c));
            let rhs = &a.mul(&b) + &a.mul(&c);
            prop_assert!(agree(&lhs, &rhs));
        }

        #[test]
        fn inverse_gives_one(a in arb_unit()) {
            let p = a.mul(&a.inv().unwrap());
            prop_assert!(agree(&p, &QSeries::one(p.known_through())));
            prop_assert_eq!(p.known_through(), a.known_through());
        }

        #[test]
        fn qderiv_is_a_derivation(a in arb_series(), b in arb_series()) {
            let lhs = a.mul(&b).qderiv();
            let rhs = &a.qderiv().mul(&b) + &a.mul(&b.qderiv());
            prop_assert!(agree(&lhs, &rhs));
        }
    }
}
