use super::EvalPoint;
use crate::error::{Error, Result};
use crate::special::{u_jet, Sign};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

type Table = BTreeMap<(i64, usize), Complex64>;

/// Coefficients `c^{+-}_{n,j}` of
/// `f(z) = sum_{n,j} (c^-_{n,j} u^{[j],-}_{k,n}(y) + c^+_{n,j} u^{[j],+}_{k,n}(y)) e(nx)`.
///
/// `r` bounds the depth: stored entries have `j <= r - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierWhittakerExpansion {
    pub k: i64,
    pub r: usize,
    pub n_min: i64,
    pub n_max: i64,
    cminus: Table,
    cplus: Table,
}

impl FourierWhittakerExpansion {
    pub fn new(k: i64, r: usize) -> Result<Self> {
        if k % 2 != 0 || r == 0 {
            return Err(Error::InvalidArgument(format!(
                "expansion needs even k and depth bound r >= 1 (k={k}, r={r})"
            )));
        }
        Ok(FourierWhittakerExpansion {
            k,
            r,
            n_min: 0,
            n_max: 0,
            cminus: Table::new(),
            cplus: Table::new(),
        })
    }

    fn table(&self, sign: Sign) -> &Table {
        match sign {
            Sign::Minus => &self.cminus,
            Sign::Plus => &self.cplus,
        }
    }

    fn table_mut(&mut self, sign: Sign) -> &mut Table {
        match sign {
            Sign::Minus => &mut self.cminus,
            Sign::Plus => &mut self.cplus,
        }
    }

    fn widen(&mut self, n: i64) {
        if self.cminus.is_empty() && self.cplus.is_empty() {
            self.n_min = n;
            self.n_max = n;
        } else {
            self.n_min = self.n_min.min(n);
            self.n_max = self.n_max.max(n);
        }
    }

    /// Overwrites `c^sign_{n,j}`.
    pub fn set(&mut self, sign: Sign, n: i64, j: usize, c: Complex64) -> Result<()> {
        if j >= self.r {
            return Err(Error::InvalidArgument(format!(
                "entry order j={j} exceeds depth bound r={}",
                self.r
            )));
        }
        self.widen(n);
        self.table_mut(sign).insert((n, j), c);
        Ok(())
    }

    /// Adds `c` to `c^sign_{n,j}`.
    pub fn add_to(&mut self, sign: Sign, n: i64, j: usize, c: Complex64) -> Result<()> {
        let cur = self.get(sign, n, j);
        self.set(sign, n, j, cur + c)
    }

    pub fn get(&self, sign: Sign, n: i64, j: usize) -> Complex64 {
        self.table(sign).get(&(n, j)).copied().unwrap_or_default()
    }

    /// Coefficient of `q^n`, `n > 0`, carried by `c^-_{n,0}`: there
    /// `u^{[0],-}_{k,n}(y) = (4 pi n)^{k/2} e^{-2 pi n y}`.
    pub fn q_coefficient(&self, n: i64) -> Complex64 {
        self.get(Sign::Minus, n, 0) * (4.0 * PI * n as f64).powf(self.k as f64 / 2.0)
    }

    pub fn entries(&self, sign: Sign) -> impl Iterator<Item = (i64, usize, Complex64)> + '_ {
        self.table(sign).iter().map(|(&(n, j), &c)| (n, j, c))
    }

    pub fn is_empty(&self) -> bool {
        self.cminus.is_empty() && self.cplus.is_empty()
    }

    /// Largest `|c|` over all stored entries.
    pub fn max_abs(&self) -> f64 {
        self.cminus
            .values()
            .chain(self.cplus.values())
            .fold(0.0, |a, c| a.max(c.norm()))
    }

    /// Nonzero `n != 0` carrying a `c^+` entry; finite for weak Maass forms.
    pub fn exact_plus_support(&self) -> BTreeSet<i64> {
        self.cplus
            .iter()
            .filter(|(&(n, _), c)| n != 0 && c.norm() > 0.0)
            .map(|(&(n, _), _)| n)
            .collect()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.cminus.values_mut().chain(out.cplus.values_mut()) {
            *v *= c;
        }
        out
    }

    /// Sum of two expansions of the same weight; the depth bound is the larger one.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::InvalidArgument(format!(
                "cannot add expansions of weights {} and {}",
                self.k, other.k
            )));
        }
        let mut out = self.clone();
        out.r = self.r.max(other.r);
        for sign in [Sign::Minus, Sign::Plus] {
            for (n, j, c) in other.entries(sign) {
                out.add_to(sign, n, j, c)?;
            }
        }
        Ok(out)
    }

    /// Value at `z`.
    pub fn eval(&self, z: EvalPoint) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for sign in [Sign::Minus, Sign::Plus] {
            let mut by_n: BTreeMap<i64, Vec<(usize, Complex64)>> = BTreeMap::new();
            for (n, j, c) in self.entries(sign) {
                by_n.entry(n).or_default().push((j, c));
            }
            for (n, terms) in by_n {
                let (jet, kept) = u_jet(self.k, n, sign, z.y)?;
                let mut part = Complex64::new(0.0, 0.0);
                for (j, c) in terms {
                    if c == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    if j >= kept {
                        return Err(Error::Unsupported(format!(
                            "u^[{j}] for n={n} needs more than the {kept} available orders"
                        )));
                    }
                    part += c * jet.derivative(j);
                }
                total += part * Complex64::from_polar(1.0, 2.0 * PI * n as f64 * z.x);
            }
        }
        Ok(total)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("expansion serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct Raw {
    k: i64,
    r: usize,
    cminus: Vec<(i64, usize, f64, f64)>,
    cplus: Vec<(i64, usize, f64, f64)>,
}

fn flatten(t: &Table) -> Vec<(i64, usize, f64, f64)> {
    t.iter().map(|(&(n, j), c)| (n, j, c.re, c.im)).collect()
}

impl Serialize for FourierWhittakerExpansion {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        Raw {
            k: self.k,
            r: self.r,
            cminus: flatten(&self.cminus),
            cplus: flatten(&self.cplus),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FourierWhittakerExpansion {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Raw::deserialize(de)?;
        let mut e = FourierWhittakerExpansion::new(raw.k, raw.r).map_err(D::Error::custom)?;
        for (sign, list) in [(Sign::Minus, raw.cminus), (Sign::Plus, raw.cplus)] {
            for (n, j, re, im) in list {
                e.set(sign, n, j, Complex64::new(re, im))
                    .map_err(D::Error::custom)?;
            }
        }
        Ok(e)
    }
}
