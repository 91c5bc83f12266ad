use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use polymaass::checks::{check_operator_on_table, reports_to_csv, run_suite_with, SuiteOptions};
use polymaass::kloosterman::{kloosterman_sum, l_series, LSeriesSpec};
use polymaass::modforms::{closed_form_eval, duke_jenkins, ClosedForm};
use polymaass::operators::{depth_classify_with_tol, DEPTH_ZERO_TOL};
use polymaass::poincare::{
    complete_eisenstein, eisenstein_lattice_with_tail, poincare_direct, poincare_fourier,
    taylor_expansion, tilde_combination, TildeKind,
};
use polymaass::special::Sign;
use polymaass::{
    CheckReport, Error, EvalPoint, FourierWhittakerExpansion, PoincareSpec, TruncationPolicy,
};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "polymaass",
    version,
    about = "Polyharmonic weak Maass forms for SL2(Z)"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV (check reports only).
    #[arg(long, global = true)]
    csv: bool,
    /// Tolerance for ad hoc checks and the depth classifier.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Last Kloosterman modulus.
    #[arg(long, global = true)]
    cmax: Option<u64>,
    /// Largest Fourier index kept.
    #[arg(long, global = true)]
    nmax: Option<i64>,
    /// Truncation order of q-expansions.
    #[arg(long, global = true)]
    order: Option<i64>,
    /// Seed for sampled points.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Record wall-clock times in check reports.
    #[arg(long, global = true)]
    timings: bool,
    /// Optional key=value file with cmax, nmax, tol, order, seed; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Duke-Jenkins basis element f_{k,m}.
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Pointwise evaluation.
    Eval {
        #[command(subcommand)]
        what: EvalCmd,
    },
    /// Fourier-Whittaker table of F_{k,m,r} / G_{k,m,r} or of a tilde combination.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, value_enum)]
        tilde: Option<Tilde>,
    },
    /// Kloosterman sum K(m, n, c).
    Kloosterman {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        c: i64,
    },
    /// Kloosterman-Bessel series L_{m,n}(s).
    Lseries {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
    },
    /// Verification suite: `all`, check ids or groups; `xi` and `laplacian`
    /// with --k --m --r --z check one table.
    Check {
        #[arg(default_value = "all")]
        ids: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: Option<EvalPoint>,
    },
    /// Depth of a table stored as JSON.
    Classify {
        #[arg(long)]
        expansion: PathBuf,
    },
}

#[derive(Subcommand)]
enum EvalCmd {
    /// P_{k,m}(z, s).
    Poincare {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: EvalPoint,
        #[arg(long, value_enum, default_value_t = Method::Fourier)]
        method: Method,
    },
    /// Lattice Eisenstein sum E_k(z, s), or its completion.
    Eisenstein {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: EvalPoint,
        #[arg(long)]
        completed: bool,
    },
    /// Closed forms F01, G21, Gk0, F0_neg_m_0, F0_neg1_0.
    ClosedForm {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: EvalPoint,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Fourier,
    Direct,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tilde {
    F,
    G,
}

fn parse_pair(s: &str) -> Result<(f64, Option<f64>), String> {
    let mut it = s.split(',');
    let a = it
        .next()
        .unwrap_or("")
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("{s:?}: {e}"))?;
    let b = match it.next() {
        Some(t) => Some(t.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))?),
        None => None,
    };
    if it.next().is_some() {
        return Err(format!(
            "{s:?}: expected at most two comma-separated numbers"
        ));
    }
    Ok((a, b))
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = parse_pair(s)?;
    Ok(Complex64::new(re, im.unwrap_or(0.0)))
}

fn parse_point(s: &str) -> Result<EvalPoint, String> {
    match parse_pair(s)? {
        (x, Some(y)) => EvalPoint::new(x, y).map_err(|e| e.to_string()),
        _ => Err(format!("{s:?}: expected X,Y")),
    }
}

/// Settings after merging the config file under the flags.
struct Settings {
    json: bool,
    csv: bool,
    tol: Option<f64>,
    order: i64,
    seed: u64,
    timings: bool,
    policy: TruncationPolicy,
}

fn load_settings(g: &Global) -> Result<Settings, String> {
    let mut g = g.clone();
    if let Some(path) = &g.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), i + 1))?;
            let (key, val) = (key.trim(), val.trim());
            let bad =
                |e: &dyn std::fmt::Display| format!("{}:{}: {key}: {e}", path.display(), i + 1);
            match key {
                "cmax" => g.cmax = g.cmax.or(Some(val.parse().map_err(|e| bad(&e))?)),
                "nmax" => g.nmax = g.nmax.or(Some(val.parse().map_err(|e| bad(&e))?)),
                "tol" => g.tol = g.tol.or(Some(val.parse().map_err(|e| bad(&e))?)),
                "order" => g.order = g.order.or(Some(val.parse().map_err(|e| bad(&e))?)),
                "seed" => g.seed = g.seed.or(Some(val.parse().map_err(|e| bad(&e))?)),
                _ => return Err(bad(&"unknown key")),
            }
        }
    }
    let mut policy = TruncationPolicy::default();
    if let Some(c) = g.cmax {
        policy.c_max = c;
    }
    if let Some(n) = g.nmax {
        policy.n_max = n;
    }
    if let Some(t) = g.tol {
        policy.target_tol = t;
    }
    policy.validate().map_err(|e| e.to_string())?;
    Ok(Settings {
        json: g.json,
        csv: g.csv,
        tol: g.tol,
        order: g.order.unwrap_or(20),
        seed: g.seed.unwrap_or(SuiteOptions::default().seed),
        timings: g.timings,
        policy,
    })
}

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn ctext(z: Complex64) -> String {
    format!("{:.15e} {:+.15e}i", z.re, z.im)
}

enum Outcome {
    Done,
    ChecksFailed,
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let st = load_settings(&cli.global)?;
    let pol = st.policy;
    let err = |e: Error| e.to_string();
    match cli.cmd {
        Cmd::Basis { k, m } => {
            let f = duke_jenkins(k, m, st.order).map_err(err)?;
            if st.json {
                println!("{}", serde_json::to_string(&f).map_err(|e| e.to_string())?);
            } else {
                println!("f_{{{k},{m}}} through q^{}", f.expansion.known_through());
                let lead = f.expansion.leading_exponent();
                for (i, c) in f.expansion.coeffs().iter().enumerate() {
                    if c.numer().bits() != 0 {
                        println!("{} {}", lead + i as i64, c);
                    }
                }
            }
        }
        Cmd::Eval { what } => {
            let (value, extra) = match what {
                EvalCmd::Poincare { k, m, s, z, method } => {
                    let spec = PoincareSpec::new(k, m, 0, s).map_err(err)?;
                    let v = match method {
                        Method::Fourier => poincare_fourier(spec, z, &pol),
                        Method::Direct => poincare_direct(spec, z, &pol),
                    }
                    .map_err(err)?;
                    (v, None)
                }
                EvalCmd::Eisenstein { k, s, z, completed } => {
                    if completed {
                        (complete_eisenstein(k, z, s, &pol).map_err(err)?, None)
                    } else {
                        let (v, tail) = eisenstein_lattice_with_tail(k, z, s, &pol).map_err(err)?;
                        (v, Some(tail))
                    }
                }
                EvalCmd::ClosedForm { name, k, m, z } => {
                    let name: ClosedForm = name.parse().map_err(err)?;
                    (
                        closed_form_eval(name, k, m, z.z(), st.order.max(1)).map_err(err)?,
                        None,
                    )
                }
            };
            if st.json {
                let mut o = json!({ "value": cjson(value) });
                if let Some(t) = extra {
                    o["tail_estimate"] = json!(t);
                }
                println!("{o}");
            } else {
                println!("{}", ctext(value));
                if let Some(t) = extra {
                    println!("tail estimate {t:.3e}");
                }
            }
        }
        Cmd::Expand { k, m, r, tilde } => {
            let e = match tilde {
                None => taylor_expansion(
                    PoincareSpec::new(k, m, r, Complex64::new(0.0, 0.0)).map_err(err)?,
                    &pol,
                ),
                Some(Tilde::F) => tilde_combination(TildeKind::F, k, m, r, &pol),
                Some(Tilde::G) => tilde_combination(TildeKind::G, k, m, r, &pol),
            }
            .map_err(err)?;
            if st.json {
                println!("{}", e.to_json());
            } else {
                print_expansion(&e);
            }
        }
        Cmd::Kloosterman { m, n, c } => {
            let v = kloosterman_sum(m, n, c).map_err(err)?;
            if st.json {
                println!("{}", json!({ "m": m, "n": n, "c": c, "value": v }));
            } else {
                println!("{v}");
            }
        }
        Cmd::Lseries { m, n, s } => {
            let v = l_series(LSeriesSpec {
                m,
                n,
                s,
                c_max: pol.c_max,
            })
            .map_err(err)?;
            if st.json {
                println!(
                    "{}",
                    json!({ "m": m, "n": n, "s": cjson(s), "c_max": pol.c_max,
                            "value": cjson(v.value), "tail_estimate": v.tail_estimate })
                );
            } else {
                println!("{}", ctext(v.value));
                println!("tail estimate {:.3e}", v.tail_estimate);
            }
        }
        Cmd::Check { ids, k, m, r, z } => {
            let adhoc = ids.len() == 1 && (ids[0] == "xi" || ids[0] == "laplacian") && k.is_some();
            let reports: Vec<CheckReport> = if adhoc {
                let (k, m) = (k.unwrap(), m.ok_or("--m is required")?);
                let z = z.ok_or("--z is required")?;
                let tol = st.tol.unwrap_or(1e-5);
                vec![check_operator_on_table(
                    ids[0] == "laplacian",
                    k,
                    m,
                    r.unwrap_or(0),
                    z,
                    tol,
                    &pol,
                )
                .map_err(err)?]
            } else {
                let opts = SuiteOptions {
                    seed: st.seed,
                    timings: st.timings,
                };
                run_suite_with(&ids, &pol, &opts).map_err(err)?
            };
            if st.json {
                println!(
                    "{}",
                    serde_json::to_string(&reports).map_err(|e| e.to_string())?
                );
            } else if st.csv {
                print!("{}", reports_to_csv(&reports));
            } else {
                for r in &reports {
                    println!("{}", r.text_line());
                    if let Some(e) = r.inputs.get("error") {
                        println!("  error: {e}");
                    }
                }
            }
            if reports.iter().any(|r| !r.passed) {
                return Ok(Outcome::ChecksFailed);
            }
        }
        Cmd::Classify { expansion } => {
            let text = std::fs::read_to_string(&expansion)
                .map_err(|e| format!("{}: {e}", expansion.display()))?;
            let e = FourierWhittakerExpansion::from_json(&text).map_err(err)?;
            let tol = st.tol.unwrap_or(DEPTH_ZERO_TOL);
            let d = depth_classify_with_tol(&e, tol).map_err(err)?;
            if st.json {
                println!("{}", json!({ "k": e.k, "depth": d, "tol": tol }));
            } else {
                println!("{d}");
            }
        }
    }
    Ok(Outcome::Done)
}

fn print_expansion(e: &FourierWhittakerExpansion) {
    println!("weight {} depth bound {}", e.k, e.r);
    for (sign, tag) in [(Sign::Minus, "-"), (Sign::Plus, "+")] {
        for (n, j, c) in e.entries(sign) {
            println!("{tag} {n} {j} {}", ctext(c));
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
