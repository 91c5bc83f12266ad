//! Kloosterman sums and the Kloosterman-Bessel series `L_{m,n}(s)`.
//!
//! Bulk evaluation factors the modulus into prime powers `q` and uses twisted
//! multiplicativity, `K(m,n,c1 c2) = K(m c2', n c2', c1) K(m c1', n c1', c2)`
//! with `c2' c2 = 1 mod c1`, together with `K(m', n', q) = K(1, m' n', q)` for
//! a unit `m'`. The table `x -> K(1, x, q)` is one FFT per prime power.
//!
//! `L_{m,n}(s)` is summed over `c <= c_max` in ascending order with
//! compensated accumulation. Work is split into fixed blocks of moduli that
//! may run in parallel; the block sums are always reduced in block order, so
//! results do not depend on the thread count.

use crate::error::{Error, Result};
use crate::jet::{Jet, JET_LEN};
use crate::special::{bessel_jet_with, rgamma_jet, BesselKind};
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

const BLOCK: u64 = 128;

fn mod_inverse(d: i64, c: i64) -> i64 {
    let e = d.extended_gcd(&c);
    e.x.rem_euclid(c)
}

fn check_modulus(c: i64) -> Result<()> {
    if c < 1 {
        return Err(Error::InvalidArgument(format!(
            "modulus must be >= 1, got {c}"
        )));
    }
    Ok(())
}

/// `K(m, n, c) = sum_{d mod c, (d,c)=1} e((m a + n d)/c)` with `a d = 1 mod c`.
pub fn kloosterman_sum(m: i64, n: i64, c: i64) -> Result<f64> {
    check_modulus(c)?;
    let (mut re, mut im) = (0.0, 0.0);
    for d in 0..c {
        if d.gcd(&c) != 1 {
            continue;
        }
        let a = mod_inverse(d, c);
        let idx = (m.rem_euclid(c) * a + n.rem_euclid(c) * d).rem_euclid(c);
        let th = 2.0 * PI * idx as f64 / c as f64;
        re += th.cos();
        im += th.sin();
    }
    if im.abs() >= 1e-10 * c as f64 {
        return Err(Error::Divergent(format!(
            "Kloosterman sum K({m},{n},{c}) has imaginary part {im}"
        )));
    }
    Ok(re)
}

fn mobius(mut n: i64) -> i64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// Ramanujan sum `K(m, 0, c) = sum_{d | gcd(m, c)} mu(c/d) d`.
pub fn ramanujan_sum(m: i64, c: i64) -> Result<i64> {
    check_modulus(c)?;
    let g = m.gcd(&c);
    Ok((1..=g)
        .filter(|d| g % d == 0)
        .map(|d| mobius(c / d) * d)
        .sum())
}

/// Prime-power tables for fast `K(m, n, c)` with `c <= c_max`.
pub struct KloostermanTables {
    c_max: u64,
    spf: Vec<u32>,
    tables: HashMap<u64, Vec<f64>>,
}

impl KloostermanTables {
    pub fn new(c_max: u64) -> Self {
        let n = c_max as usize + 1;
        let mut spf = vec![0u32; n];
        for i in 2..n {
            if spf[i] == 0 {
                let mut j = i;
                while j < n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let mut planner = rustfft::FftPlanner::<f64>::new();
        let mut tables = HashMap::new();
        for p in 2..n {
            if spf[p] as usize != p {
                continue;
            }
            let mut q = p;
            while q < n {
                tables.insert(q as u64, prime_power_table(q as i64, &mut planner));
                q *= p;
            }
        }
        KloostermanTables { c_max, spf, tables }
    }

    pub fn c_max(&self) -> u64 {
        self.c_max
    }

    /// `(q, c/q)` for the prime powers `q` exactly dividing `c`.
    fn factor(&self, c: u64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let mut rest = c as usize;
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut q = 1;
            while rest % p == 0 {
                rest /= p;
                q *= p;
            }
            out.push((q as i64, (c / q as u64) as i64));
        }
        out
    }

    /// `K(m, n, c)` for every `n` in `ns`.
    pub fn row(&self, m: i64, ns: &[i64], c: u64, out: &mut Vec<f64>) {
        out.clear();
        out.resize(ns.len(), 1.0);
        for (q, cofactor) in self.factor(c) {
            let inv = mod_inverse(cofactor.rem_euclid(q), q);
            let table = &self.tables[&(q as u64)];
            let mq = (m.rem_euclid(q) * inv) % q;
            for (slot, &n) in out.iter_mut().zip(ns) {
                let nq = (n.rem_euclid(q) * inv) % q;
                let v = if mq.gcd(&q) == 1 || nq.gcd(&q) == 1 {
                    table[((mq * nq) % q) as usize]
                } else {
                    direct_real(mq, nq, q)
                };
                *slot *= v;
            }
        }
    }
}

fn direct_real(m: i64, n: i64, c: i64) -> f64 {
    let mut re = 0.0;
    for d in 0..c {
        if d.gcd(&c) == 1 {
            let idx = (m * mod_inverse(d, c) + n * d).rem_euclid(c);
            re += (2.0 * PI * idx as f64 / c as f64).cos();
        }
    }
    re
}

/// `x -> K(1, x, q)` as the unnormalized inverse DFT of `d -> e(d^{-1}/q)`.
fn prime_power_table(q: i64, planner: &mut rustfft::FftPlanner<f64>) -> Vec<f64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); q as usize];
    for d in 1..q {
        if d.gcd(&q) == 1 {
            let th = 2.0 * PI * mod_inverse(d, q) as f64 / q as f64;
            buf[d as usize] = Complex64::new(th.cos(), th.sin());
        }
    }
    planner.plan_fft_inverse(q as usize).process(&mut buf);
    buf.iter().map(|z| z.re).collect()
}

/// Shared tables, built once per cutoff.
pub fn kloosterman_tables(c_max: u64) -> Arc<KloostermanTables> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<KloostermanTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    if let Some(t) = guard.values().find(|t| t.c_max >= c_max) {
        return t.clone();
    }
    let t = Arc::new(KloostermanTables::new(c_max));
    guard.insert(c_max, t.clone());
    t
}

/// Neumaier-compensated jet accumulator.
#[derive(Clone, Copy, Default)]
struct JetSum {
    sum: [Complex64; JET_LEN],
    comp: [Complex64; JET_LEN],
}

fn two_sum(s: f64, x: f64, c: &mut f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *c += (s - t) + x;
    } else {
        *c += (x - t) + s;
    }
    t
}

impl JetSum {
    fn add(&mut self, j: &Jet) {
        for i in 0..JET_LEN {
            let (s, c) = (&mut self.sum[i], &mut self.comp[i]);
            s.re = two_sum(s.re, j.0[i].re, &mut c.re);
            s.im = two_sum(s.im, j.0[i].im, &mut c.im);
        }
    }

    fn merge(&mut self, o: &JetSum) {
        self.add(&o.value());
    }

    fn value(&self) -> Jet {
        let mut out = [Complex64::new(0.0, 0.0); JET_LEN];
        for i in 0..JET_LEN {
            out[i] = self.sum[i] + self.comp[i];
        }
        Jet(out)
    }
}

/// Inputs of one `L_{m,n}(s)` evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LSeriesSpec {
    pub m: i64,
    pub n: i64,
    pub s: Complex64,
    pub c_max: u64,
}

/// Partial sum through `c_max` and a tail estimate from the partial sums
/// at `c_max/4` and `c_max/2`. The estimate is not added to `value`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LSeriesValue {
    pub value: Complex64,
    pub tail_estimate: f64,
}

/// `L_{m,n}(s)` by direct summation.
pub fn l_series(spec: LSeriesSpec) -> Result<LSeriesValue> {
    if spec.m == 0 {
        return Err(Error::InvalidArgument("L_{m,n} needs m != 0".into()));
    }
    if spec.c_max < 1 {
        return Err(Error::InvalidArgument("c_max must be >= 1".into()));
    }
    if spec.s.re < 1.0 {
        return Err(Error::Divergent(format!(
            "L_{{m,n}}(s) is only summed for Re s >= 1, got s = {}",
            spec.s
        )));
    }
    if spec.n == 0 && spec.s.re == 1.0 && spec.c_max < 10_000 {
        return Err(Error::Divergent(
            "L_{m,0}(s) at Re s = 1 needs c_max >= 10000".into(),
        ));
    }
    let row = LRow::new(spec.m, &[spec.n], Jet::constant(spec.s));
    let (vals, tails) = row.sum(spec.c_max);
    Ok(LSeriesValue {
        value: vals[0].value(),
        tail_estimate: tails[0],
    })
}

/// Shared per-modulus evaluation for a fixed `m`, a set of `n` and a jet in `s`.
struct LRow {
    m: i64,
    ns: Vec<i64>,
    s: Jet,
    nu: Jet,
    rg: Jet,
}

impl LRow {
    fn new(m: i64, ns: &[i64], s: Jet) -> Self {
        let nu = s.scale(2.0) - 1.0;
        LRow {
            m,
            ns: ns.to_vec(),
            s,
            nu,
            rg: rgamma_jet(nu + 1.0),
        }
    }

    /// Adds the `c` terms of every `n` into `acc`.
    fn add_modulus(
        &self,
        tables: &KloostermanTables,
        c: u64,
        k_buf: &mut Vec<f64>,
        acc: &mut [JetSum],
    ) {
        tables.row(self.m, &self.ns, c, k_buf);
        let lnc = (c as f64).ln();
        for ((acc, &k), &n) in acc.iter_mut().zip(k_buf.iter()).zip(&self.ns) {
            if k == 0.0 {
                continue;
            }
            let term = if n == 0 {
                self.s.scale(-2.0 * lnc).exp().scale(k)
            } else {
                let x = 4.0 * PI * ((self.m * n).unsigned_abs() as f64).sqrt() / c as f64;
                let kind = if self.m * n > 0 {
                    BesselKind::J
                } else {
                    BesselKind::I
                };
                bessel_jet_with(kind, self.nu, self.rg, x).scale(k / c as f64)
            };
            acc.add(&term);
        }
    }

    fn sum_range(&self, tables: &KloostermanTables, lo: u64, hi: u64) -> Vec<JetSum> {
        let blocks: Vec<(u64, u64)> = (lo..=hi)
            .step_by(BLOCK as usize)
            .map(|b| (b, (b + BLOCK - 1).min(hi)))
            .collect();
        let partials: Vec<Vec<JetSum>> = blocks
            .par_iter()
            .map(|&(a, b)| {
                let mut acc = vec![JetSum::default(); self.ns.len()];
                let mut kb = Vec::new();
                for c in a..=b {
                    self.add_modulus(tables, c, &mut kb, &mut acc);
                }
                acc
            })
            .collect();
        let mut total = vec![JetSum::default(); self.ns.len()];
        for p in &partials {
            for (t, x) in total.iter_mut().zip(p) {
                t.merge(x);
            }
        }
        total
    }

    /// Partial sums through `c_max` with tail estimates.
    fn sum(&self, c_max: u64) -> (Vec<Jet>, Vec<f64>) {
        let tables = kloosterman_tables(c_max);
        let tables = tables.as_ref();
        let q1 = (c_max / 4).max(1);
        let q2 = (c_max / 2).max(q1);
        let mut s1 = self.sum_range(tables, 1, q1);
        let d1 = if q2 > q1 {
            self.sum_range(tables, q1 + 1, q2)
        } else {
            vec![JetSum::default(); self.ns.len()]
        };
        let d2 = if c_max > q2 {
            self.sum_range(tables, q2 + 1, c_max)
        } else {
            vec![JetSum::default(); self.ns.len()]
        };
        let mut tails = Vec::with_capacity(self.ns.len());
        for i in 0..self.ns.len() {
            tails.push(tail_estimate(
                d1[i].value().max_abs(),
                d2[i].value().max_abs(),
            ));
            s1[i].merge(&d1[i]);
            s1[i].merge(&d2[i]);
        }
        (s1.iter().map(|x| x.value()).collect(), tails)
    }
}

/// Geometric continuation of the increments over the last two doublings.
fn tail_estimate(d1: f64, d2: f64) -> f64 {
    if d1 > 0.0 && d2 < d1 {
        let r = d2 / d1;
        d2 * r / (1.0 - r)
    } else {
        d2
    }
}

/// `L_{m,n}` as jets in `s` around `s0`, for every `|n| <= n_max`.
#[derive(Clone, Debug)]
pub struct LBank {
    pub m: i64,
    pub s0: f64,
    pub n_max: i64,
    pub c_max: u64,
    values: Vec<Jet>,
    tails: Vec<f64>,
}

impl LBank {
    pub fn new(m: i64, s0: f64, n_max: i64, c_max: u64) -> Result<Self> {
        if m == 0 || c_max < 1 || n_max < 0 {
            return Err(Error::InvalidArgument(format!(
                "LBank needs m != 0, c_max >= 1, n_max >= 0 (m={m}, c_max={c_max}, n_max={n_max})"
            )));
        }
        if s0 < 1.0 {
            return Err(Error::Divergent(format!(
                "L series need Re s >= 1, got {s0}"
            )));
        }
        let ns: Vec<i64> = (-n_max..=n_max).collect();
        let row = LRow::new(m, &ns, Jet::variable(s0));
        let (values, tails) = row.sum(c_max);
        Ok(LBank {
            m,
            s0,
            n_max,
            c_max,
            values,
            tails,
        })
    }

    pub fn get(&self, n: i64) -> Jet {
        self.values[(n + self.n_max) as usize]
    }

    pub fn tail(&self, n: i64) -> f64 {
        self.tails[(n + self.n_max) as usize]
    }

    pub fn max_tail(&self) -> f64 {
        self.tails.iter().cloned().fold(0.0, f64::max)
    }
}

/// `L_{m,n}(s)` at one complex `s` for every `n` in `ns`, with tail estimates.
pub fn l_values(
    m: i64,
    ns: &[i64],
    s: Complex64,
    c_max: u64,
) -> Result<(Vec<Complex64>, Vec<f64>)> {
    if m == 0 || c_max < 1 {
        return Err(Error::InvalidArgument(format!(
            "L series need m != 0 and c_max >= 1 (m={m}, c_max={c_max})"
        )));
    }
    if s.re < 1.0 {
        return Err(Error::Divergent(format!(
            "L series need Re s >= 1, got {s}"
        )));
    }
    let (vals, tails) = LRow::new(m, ns, Jet::constant(s)).sum(c_max);
    Ok((vals.iter().map(|v| v.value()).collect(), tails))
}

type BankKey = (i64, u64, i64, u64);

/// Memoized [`LBank::new`]; banks are immutable once built.
pub fn l_bank(m: i64, s0: f64, n_max: i64, c_max: u64) -> Result<Arc<LBank>> {
    static CACHE: OnceLock<Mutex<HashMap<BankKey, Arc<LBank>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (m, s0.to_bits(), n_max, c_max);
    if let Some(b) = cache.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let bank = Arc::new(LBank::new(m, s0, n_max, c_max)?);
    cache.lock().unwrap().insert(key, bank.clone());
    Ok(bank)
}

/// `g_{k,m,n}(s)` as a jet; `Gamma(2s)` and `1/(2s-1)` must be regular at the
/// base point.
pub fn g_jet(k: i64, m: i64, n: i64, s: Jet) -> Result<Jet> {
    if m == 0 {
        return Err(Error::InvalidArgument("g_{k,m,n} needs m != 0".into()));
    }
    let two_s = s.scale(2.0);
    let rg2s = rgamma_jet(two_s);
    if rg2s.value() == Complex64::new(0.0, 0.0) {
        return Err(Error::GammaPole(format!("Gamma(2s) at s = {}", s.value())));
    }
    let kh = k as f64 / 2.0;
    if n != 0 {
        let sg = n.signum() as f64;
        let c = 2.0 * PI * (m as f64 / n as f64).abs().sqrt();
        return Ok((rgamma_jet(s + sg * kh) / rg2s).scale(c));
    }
    let denom = two_s - 1.0;
    if denom.value() == Complex64::new(0.0, 0.0) {
        return Err(Error::GammaPole("1/(2s-1) at s = 1/2".into()));
    }
    let pow = (s.scale((m.unsigned_abs() as f64).ln()) + s.scale(PI.ln())).exp();
    Ok((pow * rgamma_jet(s + kh) * rgamma_jet(s - kh) / (rg2s * denom)).scale(4.0 * PI))
}

/// `g_{k,m,n}(s)`.
pub fn g_coeff(k: i64, m: i64, n: i64, s: Complex64) -> Result<Complex64> {
    Ok(g_jet(k, m, n, Jet::constant(s))?.value())
}
