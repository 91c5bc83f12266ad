//! Fixed quadrature rules.
//!
//! Nodes are computed once and shared. Integrands are closures returning any
//! type that supports weighted accumulation, so the same rules serve plain
//! complex values and [`Jet`](crate::jet::Jet)s.

use std::ops::{Add, Mul};
use std::sync::OnceLock;

/// Exp-sinh rule on `[0, inf)`: `v = exp(pi/2 sinh t)`, trapezoid in `t`.
/// Suited to integrands with algebraic behavior at 0 and exponential decay.
pub struct ExpSinh {
    nodes: Vec<(f64, f64)>,
}

const EXPSINH_STEP: f64 = 1.0 / 32.0;
const EXPSINH_T: f64 = 4.6;

fn expsinh_rule() -> &'static ExpSinh {
    static RULE: OnceLock<ExpSinh> = OnceLock::new();
    RULE.get_or_init(|| {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let k = (EXPSINH_T / EXPSINH_STEP).ceil() as i64;
        let nodes = (-k..=k)
            .map(|i| {
                let t = i as f64 * EXPSINH_STEP;
                let v = (half_pi * t.sinh()).exp();
                let w = EXPSINH_STEP * half_pi * t.cosh() * v;
                (v, w)
            })
            .filter(|(v, w)| v.is_finite() && w.is_finite() && *v > 0.0)
            .collect();
        ExpSinh { nodes }
    })
}

/// `int_0^inf f(v) dv`.
pub fn integrate_half_line<T, F>(f: F, zero: T) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let mut acc = zero;
    for &(v, w) in &expsinh_rule().nodes {
        acc = acc + f(v) * w;
    }
    acc
}

/// 20-point Gauss-Legendre on `[-1, 1]`.
fn gauss_legendre_20() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(20))
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule via Newton
/// iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite 20-point Gauss-Legendre on `[a, b]` with `panels` equal panels.
pub fn integrate_interval<T, F>(f: F, a: f64, b: f64, panels: usize, zero: T) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let rule = gauss_legendre_20();
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut acc = zero;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for &(x, w) in rule {
            acc = acc + f(mid + 0.5 * h * x) * (0.5 * h * w);
        }
    }
    acc
}

/// Tanh-sinh rule on `[a, b]`; tolerant of integrable endpoint singularities.
pub fn integrate_tanh_sinh<T, F>(f: F, a: f64, b: f64, zero: T) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let half_pi = std::f64::consts::FRAC_PI_2;
    let h = 1.0 / 64.0;
    let d = 0.5 * (b - a);
    let mut acc = zero;
    let k = (4.0 / h) as i64;
    for i in -k..=k {
        let t = i as f64 * h;
        let u = half_pi * t.sinh();
        let x = u.tanh();
        let cu = u.cosh();
        let w = h * half_pi * t.cosh() / (cu * cu);
        // distance to the nearer endpoint, computed without cancellation
        let e = 1.0 / (u.abs().exp() * cu);
        let node = if x >= 0.0 { b - d * e } else { a + d * e };
        if node <= a || node >= b || w == 0.0 {
            continue;
        }
        acc = acc + f(node) * (d * w);
    }
    acc
}
