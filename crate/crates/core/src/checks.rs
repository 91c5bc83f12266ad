//! The verification suite. Every check computes one residual and compares it
//! against a fixed tolerance; a check that errors is reported as failed with
//! an infinite residual and the error message under the `error` input.

use crate::error::{Error, Result};
use crate::kloosterman::{g_coeff, kloosterman_sum, l_bank, ramanujan_sum};
use crate::modforms::{
    closed_form_eval, delta_qexp, divisor_sigma, duke_jenkins, duke_jenkins_family, ell_index,
    q_of, ClosedForm,
};
use crate::operators::{
    laplacian_numeric, laplacian_on_expansion, xi_numeric, xi_on_expansion, SampledForm,
};
use crate::poincare::{
    poincare_direct, poincare_fourier, taylor_expansion, tilde_combination, EvalPoint,
    FourierWhittakerExpansion, PoincareSpec, TildeKind, TruncationPolicy,
};
use crate::qseries::rational_to_f64;
use crate::special::{bessel_j, gamma_fn, mplus, whittaker_M, whittaker_W, WhittakerParams};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

/// Result of one verification. `passed` holds iff `residual <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(serialize_with = "ser_residual", deserialize_with = "de_residual")]
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime_ms: u64,
}

// non-finite residuals (errored checks) travel as null
fn ser_residual<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

fn de_residual<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

pub const CSV_HEADER: &str = "check_id,residual,tolerance,passed,runtime_ms";

impl CheckReport {
    pub fn new(
        check_id: &str,
        inputs: BTreeMap<String, String>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            inputs,
            residual,
            tolerance,
            passed: residual <= tolerance,
            runtime_ms: 0,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:e},{:e},{},{}",
            self.check_id, self.residual, self.tolerance, self.passed, self.runtime_ms
        )
    }

    pub fn text_line(&self) -> String {
        format!(
            "{} {}  residual={:.3e} tolerance={:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.check_id,
            self.residual,
            self.tolerance
        )
    }
}

/// Header plus one row per report.
pub fn reports_to_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Suite settings outside the truncation policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Seed for the sampled points of the modularity check.
    pub seed: u64,
    /// Record wall-clock times; off by default so reports are reproducible.
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 7,
            timings: false,
        }
    }
}

struct Outcome {
    inputs: Vec<(String, String)>,
    residual: f64,
    tolerance: f64,
}

fn outcome(residual: f64, tolerance: f64, inputs: &[(&str, String)]) -> Outcome {
    Outcome {
        inputs: inputs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        residual,
        tolerance,
    }
}

type CheckFn = fn(&TruncationPolicy, &SuiteOptions) -> Result<Outcome>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("beta_delta_ratio_spread", beta_delta_spread),
    ("beta_delta_value", beta_delta_value),
    ("cusp_vanishing_g4", cusp_vanishing),
    ("direct_vs_fourier", direct_vs_fourier),
    ("duality", duality),
    ("golden_coefficients", golden),
    ("kronecker_limit", kronecker_limit),
    ("modularity", modularity),
    ("ramanujan_m1", |p, o| ramanujan(1, p, o)),
    ("ramanujan_m2", |p, o| ramanujan(2, p, o)),
    ("ramanujan_m3", |p, o| ramanujan(3, p, o)),
    ("ramanujan_m4", |p, o| ramanujan(4, p, o)),
    ("ramanujan_m5", |p, o| ramanujan(5, p, o)),
    ("tilde_images", tilde_images),
    ("weight2_j_coefficient", weight2_j),
    ("whittaker_closed_forms", whittaker_closed_forms),
    ("whittaker_mmw", whittaker_mmw),
    ("whittaker_ode", whittaker_ode),
    ("whittaker_wronskian", whittaker_wronskian),
    ("xi_recursion", xi_recursion),
    ("xi_tables", xi_tables),
];

/// All check ids in report order.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Expands a selection: `all`, an exact id, or a group prefix such as
/// `ramanujan` or `whittaker`.
pub fn resolve_selection(selection: &[String]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for sel in selection {
        let hits: Vec<&'static str> = if sel == "all" {
            check_ids()
        } else {
            check_ids()
                .into_iter()
                .filter(|id| {
                    *id == sel
                        || id
                            .strip_prefix(sel.as_str())
                            .is_some_and(|r| r.starts_with('_'))
                })
                .collect()
        };
        if hits.is_empty() {
            return Err(Error::UnknownCheck {
                id: sel.clone(),
                valid: check_ids().join(", "),
            });
        }
        out.extend(hits);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Runs the selected checks with default [`SuiteOptions`].
pub fn run_suite(selection: &[String], policy: &TruncationPolicy) -> Result<Vec<CheckReport>> {
    run_suite_with(selection, policy, &SuiteOptions::default())
}

/// Runs the selected checks in parallel; reports come back ordered by id.
pub fn run_suite_with(
    selection: &[String],
    policy: &TruncationPolicy,
    opts: &SuiteOptions,
) -> Result<Vec<CheckReport>> {
    policy.validate()?;
    let ids = resolve_selection(selection)?;
    let mut reports: Vec<CheckReport> = ids
        .par_iter()
        .map(|id| {
            let f = CHECKS.iter().find(|c| c.0 == *id).expect("resolved id").1;
            run_one(id, f, policy, opts)
        })
        .collect();
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

fn policy_inputs(policy: &TruncationPolicy) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("c_max".to_string(), policy.c_max.to_string()),
        ("n_max".to_string(), policy.n_max.to_string()),
        ("fd_step_z".to_string(), policy.fd_step_z.to_string()),
    ])
}

fn run_one(id: &str, f: CheckFn, policy: &TruncationPolicy, opts: &SuiteOptions) -> CheckReport {
    let start = Instant::now();
    let mut inputs = policy_inputs(policy);
    let mut report = match f(policy, opts) {
        Ok(o) => {
            inputs.extend(o.inputs);
            CheckReport::new(id, inputs, o.residual, o.tolerance)
        }
        Err(e) => {
            inputs.insert("error".into(), e.to_string());
            CheckReport::new(id, inputs, f64::INFINITY, 0.0)
        }
    };
    if opts.timings {
        report.runtime_ms = start.elapsed().as_millis() as u64;
    }
    report
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn pt(x: f64, y: f64) -> EvalPoint {
    EvalPoint { x, y }
}

fn table(k: i64, m: i64, r: usize, policy: &TruncationPolicy) -> Result<FourierWhittakerExpansion> {
    taylor_expansion(PoincareSpec::new(k, m, r, c(0.0))?, policy)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn golden(_: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let want: [(i64, i64, i64); 4] = [
        (1, 1, 196884),
        (1, 2, 21493760),
        (2, 1, 42987520),
        (2, 2, 40491909396),
    ];
    let mut worst = 0.0f64;
    for (m, n, v) in want {
        let a = duke_jenkins(0, m, n)?.coefficient(n)?;
        worst = worst.max(rational_to_f64(&(a - BigRational::from_integer(v.into()))).abs());
    }
    Ok(outcome(
        worst,
        0.0,
        &[
            ("k", "0".into()),
            ("pairs", "(1,1) (1,2) (2,1) (2,2)".into()),
        ],
    ))
}

fn duality(_: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut pairs = 0usize;
    for k in [-10i64, 0, 2, 4, 12] {
        let (l1, l2) = (ell_index(k)?.ell, ell_index(2 - k)?.ell);
        let a = duke_jenkins_family(k, 10, 10)?;
        let b = duke_jenkins_family(2 - k, 10, 10)?;
        for m in 1..=10i64 {
            for n in 1..=10i64 {
                if m < -l1 || n <= l1 || n < -l2 || m <= l2 {
                    continue;
                }
                let x = a[(m + l1) as usize].coeff(n)?;
                let y = b[(n + l2) as usize].coeff(m)?;
                worst = worst.max(rational_to_f64(&(x + y)).abs());
                pairs += 1;
            }
        }
    }
    Ok(outcome(
        worst,
        0.0,
        &[
            ("weights", "-10 0 2 4 12".into()),
            ("pairs", pairs.to_string()),
        ],
    ))
}

const RAMANUJAN_C_MAX: i64 = 100_000;

fn ramanujan(m: i64, _: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for cc in 1..=RAMANUJAN_C_MAX {
        let t = ramanujan_sum(-m, cc)? as f64 / (cc as f64 * cc as f64) - comp;
        let s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    let want = 6.0 * divisor_sigma(m)? as f64 / (m as f64 * PI * PI);
    Ok(outcome(
        (sum - want).abs(),
        1e-3,
        &[
            ("m", m.to_string()),
            ("c_sum_max", RAMANUJAN_C_MAX.to_string()),
        ],
    ))
}

/// Ratios of the q^1..q^5 coefficients of `G_{12,1,0}` to those of `Delta`.
fn beta_ratios(policy: &TruncationPolicy) -> Result<Vec<Complex64>> {
    let g = table(12, 1, 0, policy)?;
    let d = delta_qexp(6);
    (1..=5)
        .map(|n| Ok(g.q_coefficient(n) / rational_to_f64(&d.coeff(n)?)))
        .collect()
}

fn beta_delta_spread(policy: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let r = beta_ratios(policy)?;
    let spread = r.iter().map(|x| rel(*x, r[0])).fold(0.0, f64::max);
    Ok(outcome(
        spread,
        1e-6,
        &[
            ("k", "12".into()),
            ("m", "1".into()),
            ("s", "6".into()),
            ("n", "1..5".into()),
        ],
    ))
}

fn beta_delta_value(policy: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let r = beta_ratios(policy)?;
    Ok(outcome(
        (r[0] - c(2.840287)).norm(),
        1e-4,
        &[
            ("k", "12".into()),
            ("m", "1".into()),
            ("s", "6".into()),
            ("beta", format!("{:.9}", r[0].re)),
        ],
    ))
}

fn weight2_j(policy: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let g = table(2, -1, 0, policy)?;
    let q1 = g.q_coefficient(1);
    let bank = l_bank(-1, 1.0, policy.n_max.max(1), policy.c_max)?;
    let tail = q1.norm() * bank.tail(1) / bank.get(1).value().norm();
    Ok(outcome(
        rel(q1, c(-196884.0)),
        1e-2,
        &[
            ("k", "2".into()),
            ("m", "-1".into()),
            ("q1", format!("{:.6}", q1.re)),
            ("tail_estimate", format!("{tail:.3e}")),
        ],
    ))
}

/// Largest single `c`-term of the Kloosterman series with `c <= 50`, in the
/// q-coefficient normalization, against the computed `q^n` coefficient.
fn cusp_vanishing(policy: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let (k, m, s) = (4i64, 1i64, 2.0);
    let g = table(k, m, 0, policy)?;
    let norm = (4.0 * PI).powf(-(k as f64) / 2.0);
    let mut worst = 0.0f64;
    for n in 1..=5i64 {
        let qn = (4.0 * PI * n as f64).powf(k as f64 / 2.0) * norm;
        let gn = g_coeff(k, m, n, c(s))?.norm();
        let mut size = 0.0f64;
        for cc in 1..=50i64 {
            let x = 4.0 * PI * ((m * n) as f64).sqrt() / cc as f64;
            let term = kloosterman_sum(m, n, cc)? * bessel_j(2.0 * s - 1.0, x) / cc as f64;
            size = size.max(term.abs());
        }
        size *= qn * gn;
        if n == m {
            // the phi term Gamma(2s)/Gamma(s+k/2) = 1
            size = size.max(qn);
        }
        worst = worst.max(g.q_coefficient(n).norm() / size);
    }
    Ok(outcome(
        worst,
        1e-5,
        &[("k", "4".into()), ("m", "1".into()), ("n", "1..5".into())],
    ))
}

fn t_derivs(
    f: &dyn Fn(f64) -> Result<Complex64>,
    t: f64,
) -> Result<(Complex64, Complex64, Complex64)> {
    let h = 1e-3 * t.max(1.0);
    let f0 = f(t)?;
    let (fp, fm, fp2, fm2) = (f(t + h)?, f(t - h)?, f(t + 2.0 * h)?, f(t - 2.0 * h)?);
    let d1 = (8.0 * (fp - fm) - (fp2 - fm2)) / (12.0 * h);
    let d2 = (16.0 * (fp + fm) - (fp2 + fm2) - 30.0 * f0) / (12.0 * h * h);
    Ok((f0, d1, d2))
}

fn whittaker_ode(_: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for (mu, nu) in [(1.0, 0.3), (-2.0, 1.5), (0.5, 1.2), (0.0, 0.5)] {
        for t in [0.5, 2.0, 10.0] {
            let pot = -0.25 + mu / t + (0.25 - nu * nu) / (t * t);
            let fns: [&dyn Fn(f64) -> Result<Complex64>; 3] = [
                &|x| whittaker_M(WhittakerParams::new(mu, nu, x)),
                &|x| whittaker_W(WhittakerParams::new(mu, nu, x)),
                &|x| mplus(WhittakerParams::new(mu, nu, x)),
            ];
            for f in fns {
                let (v, _, d2) = t_derivs(f, t)?;
                worst = worst.max((d2 + pot * v).norm() / (v.norm() + d2.norm()));
            }
        }
    }
    Ok(outcome(
        worst,
        1e-6,
        &[("functions", "M W M+".into()), ("t", "0.5 2 10".into())],
    ))
}

fn whittaker_wronskian(_: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for (mu, nu) in [(0.0, 0.5), (1.0, 0.3), (-2.0, 1.5)] {
        let t = 3.0;
        let (m, m1, _) = t_derivs(&|x| whittaker_M(WhittakerParams::new(mu, nu, x)), t)?;
        let (w, w1, _) = t_derivs(&|x| whittaker_W(WhittakerParams::new(mu, nu, x)), t)?;
        let expect = -gamma_fn(c(1.0 + 2.0 * nu))? / gamma_fn(c(nu - mu + 0.5))?;
        worst = worst.max(rel(m * w1 - m1 * w, expect));
    }
    Ok(outcome(
        worst,
        1e-8,
        &[("pair", "M W".into()), ("t", "3".into())],
    ))
}

fn whittaker_mmw(_: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for (mu, nu, t) in [(1.0, 0.3, 2.0), (0.7, 0.9, 2.5), (-1.5, 2.2, 6.0)] {
        let (mu, nu) = (c(mu), c(nu));
        let p = WhittakerParams { mu, nu, y: t };
        let g = gamma_fn(1.0 + 2.0 * nu)?;
        let i_pi = Complex64::new(0.0, PI);
        let rhs = g / gamma_fn(nu - mu + 0.5)? * (i_pi * mu).exp() * mplus(p)?
            + g / gamma_fn(nu + mu + 0.5)? * (-i_pi * (nu - mu + 0.5)).exp() * whittaker_W(p)?;
        worst = worst.max(rel(rhs, whittaker_M(p)?));
    }
    Ok(outcome(
        worst,
        1e-8,
        &[("points", "(1,0.3,2) (0.7,0.9,2.5) (-1.5,2.2,6)".into())],
    ))
}

fn whittaker_closed_forms(_: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for t in [0.5, 2.0, 10.0] {
        let a = whittaker_W(WhittakerParams::new(1.0, 0.5, t))?;
        worst = worst.max(rel(a, c(t * (-t / 2.0).exp())));
        let b = whittaker_W(WhittakerParams::new(0.0, -0.5, t))?;
        worst = worst.max(rel(b, c((-t / 2.0).exp())));
    }
    Ok(outcome(
        worst,
        1e-10,
        &[
            ("forms", "W_{1,1/2} W_{0,-1/2}".into()),
            ("t", "0.5 2 10".into()),
        ],
    ))
}

fn xi_tables(policy: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for (k, m) in [(0i64, -1i64), (2, -1)] {
        let t = table(k, m, 0, policy)?;
        let x = xi_on_expansion(&t)?;
        let sf = SampledForm::from_expansion(t);
        for z in [pt(0.0, 1.0), pt(0.3, 0.8)] {
            let num = xi_numeric(&sf, z, policy.fd_step_z)?;
            worst = worst.max((x.eval(z)? - num).norm() / (1.0 + num.norm()));
        }
    }
    Ok(outcome(
        worst,
        1e-5,
        &[
            ("tables", "F_{0,-1,0} G_{2,-1,0}".into()),
            ("z", "i 0.3+0.8i".into()),
        ],
    ))
}

fn xi_recursion(policy: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let lhs = xi_on_expansion(&table(0, -1, 1, policy)?)?;
    let rhs = table(2, 1, 1, policy)?
        .add(&table(2, 1, 0, policy)?)?
        .scale(c(4.0 * PI));
    let mut worst = 0.0f64;
    for z in [pt(0.0, 1.0), pt(0.3, 0.8), pt(-0.2, 1.5)] {
        worst = worst.max(rel(lhs.eval(z)?, rhs.eval(z)?));
    }
    Ok(outcome(
        worst,
        1e-4,
        &[("z", "i 0.3+0.8i -0.2+1.5i".into())],
    ))
}

fn kronecker_limit(policy: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let f = SampledForm::new(0, |z| closed_form_eval(ClosedForm::F01, 0, 0, z.z(), 60));
    let mut worst = 0.0f64;
    for z in [pt(0.0, 1.0), pt(0.25, 2.0)] {
        worst = worst.max((laplacian_numeric(&f, z, policy.fd_step_z)? + 1.0).norm());
    }
    Ok(outcome(
        worst,
        1e-5,
        &[("form", "F01".into()), ("z", "i 1/4+2i".into())],
    ))
}

fn direct_vs_fourier(policy: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let spec = PoincareSpec::new(4, 1, 0, c(1.6))?;
    let z = pt(0.0, 1.0);
    let d = poincare_direct(spec, z, policy)?;
    let f = poincare_fourier(spec, z, policy)?;
    Ok(outcome(
        rel(d, f),
        1e-3,
        &[
            ("k", "4".into()),
            ("m", "1".into()),
            ("s", "1.6".into()),
            ("z", "i".into()),
        ],
    ))
}

/// Points with `y > 0.5` whose images under `z -> -1/z` also have `y > 0.5`.
pub fn modularity_points(seed: u64, count: usize) -> Vec<EvalPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let theta = rng.gen_range(PI / 4.0..3.0 * PI / 4.0);
            let rho = rng.gen_range(0.85..1.15);
            pt(rho * theta.cos(), rho * theta.sin())
        })
        .collect()
}

fn modularity(policy: &TruncationPolicy, opts: &SuiteOptions) -> Result<Outcome> {
    let specs: [(i64, i64, usize); 7] = [
        (0, -1, 0),
        (0, -1, 1),
        (2, -1, 0),
        (2, 1, 1),
        (4, 1, 1),
        (12, 1, 0),
        (-10, -1, 0),
    ];
    let mut worst = 0.0f64;
    let points = modularity_points(opts.seed, 5);
    for (k, m, r) in specs {
        let f = table(k, m, r, policy)?;
        for z in &points {
            let zc = z.z();
            let lhs = f.eval(EvalPoint::from_complex(-zc.inv())?)?;
            let v = f.eval(*z)?;
            worst = worst.max((lhs - zc.powi(k as i32) * v).norm() / (1.0 + v.norm()));
        }
    }
    Ok(outcome(
        worst,
        1e-4,
        &[
            ("seed", opts.seed.to_string()),
            ("points", "5".into()),
            ("tables", specs.len().to_string()),
        ],
    ))
}

fn tilde_images(policy: &TruncationPolicy, _: &SuiteOptions) -> Result<Outcome> {
    let pts = [pt(0.1, 1.2), pt(0.3, 0.9)];
    let dj = |k: i64, m: i64, z: EvalPoint| -> Result<Complex64> {
        Ok(duke_jenkins(k, m, 40)?.expansion.eval_q(q_of(z.z())))
    };
    let fact = |n: usize| crate::jet::factorial(n);
    let mut worst = 0.0f64;
    // Delta^{r-1} F~_{k,-m,r-1} = (k-1)^{r-1} (1-k)! f_{k,m}
    for (k, m, r) in [(-10i64, 2i64, 1usize), (-10, 2, 2), (-4, 1, 2)] {
        let mut t = tilde_combination(TildeKind::F, k, -m, r, policy)?;
        for _ in 1..r {
            t = laplacian_on_expansion(&t)?;
        }
        let factor = ((k - 1) as f64).powi(r as i32 - 1) * fact((1 - k) as usize);
        for z in pts {
            worst = worst.max(rel(t.eval(z)?, dj(k, m, z)? * factor));
        }
    }
    // xi Delta^{r-1} G~_{k,m,r} = (4 pi)^{1-k} (1-k)^{r-1} (k-1)! f_{2-k,m}
    for (k, m, r) in [(4i64, 1i64, 1usize), (4, 1, 2), (12, 2, 1)] {
        let mut t = tilde_combination(TildeKind::G, k, m, r, policy)?;
        for _ in 1..r {
            t = laplacian_on_expansion(&t)?;
        }
        let t = xi_on_expansion(&t)?;
        let factor = (4.0 * PI).powi(1 - k as i32)
            * ((1 - k) as f64).powi(r as i32 - 1)
            * fact((k - 1) as usize);
        for z in pts {
            worst = worst.max(rel(t.eval(z)?, dj(2 - k, m, z)? * factor));
        }
    }
    Ok(outcome(
        worst,
        1e-4,
        &[
            ("F", "(-10,-2,0) (-10,-2,1) (-4,-1,1)".into()),
            ("G", "(4,1,1) (4,1,2) (12,2,1)".into()),
        ],
    ))
}

/// Exact `xi_k` (or `Delta_k`) on the table of `F_{k,m,r}` / `G_{k,m,r}`
/// against the stencil at `z`, relative to `1 + |stencil|`.
pub fn check_operator_on_table(
    laplacian: bool,
    k: i64,
    m: i64,
    r: usize,
    z: EvalPoint,
    tol: f64,
    policy: &TruncationPolicy,
) -> Result<CheckReport> {
    let t = table(k, m, r, policy)?;
    let sf = SampledForm::from_expansion(t.clone());
    let (exact, num) = if laplacian {
        (
            laplacian_on_expansion(&t)?.eval(z)?,
            laplacian_numeric(&sf, z, policy.fd_step_z)?,
        )
    } else {
        (
            xi_on_expansion(&t)?.eval(z)?,
            xi_numeric(&sf, z, policy.fd_step_z)?,
        )
    };
    let mut inputs = policy_inputs(policy);
    for (key, v) in [
        ("k", k.to_string()),
        ("m", m.to_string()),
        ("r", r.to_string()),
        ("z", format!("{},{}", z.x, z.y)),
    ] {
        inputs.insert(key.into(), v);
    }
    let id = if laplacian { "laplacian" } else { "xi" };
    Ok(CheckReport::new(
        id,
        inputs,
        (exact - num).norm() / (1.0 + num.norm()),
        tol,
    ))
}

#[cfg(test)]
mod tests;
