//! Acceptance criteria: one PASS/FAIL line per criterion.

use polymaass::checks::{run_suite_with, SuiteOptions};
use polymaass::{CheckReport, TruncationPolicy};

const CRITERIA: &[(u32, &str, &[&str])] = &[
    (
        1,
        "golden Duke-Jenkins coefficients",
        &["golden_coefficients"],
    ),
    (2, "duality a_k(m,n) = -a_{2-k}(n,m)", &["duality"]),
    (3, "Ramanujan identity, m = 1..5", &["ramanujan"]),
    (4, "beta_Delta ratio for G_{12,1,0}", &["beta_delta"]),
    (
        5,
        "G_{2,-1,0} q^1 coefficient -196884",
        &["weight2_j_coefficient"],
    ),
    (
        6,
        "G_{4,1,0} cusp coefficients vanish",
        &["cusp_vanishing_g4"],
    ),
    (7, "Whittaker layer", &["whittaker"]),
    (8, "xi on tables vs stencils", &["xi_tables"]),
    (
        9,
        "xi_0 F_{0,-1,1} = 4 pi (G_{2,1,1} + G_{2,1,0})",
        &["xi_recursion"],
    ),
    (10, "Delta_0 F_{0,1} = -1", &["kronecker_limit"]),
    (
        11,
        "direct vs Fourier at (4, 1, 1.6)",
        &["direct_vs_fourier"],
    ),
    (12, "modularity at seeded points", &["modularity"]),
];

fn main() {
    let policy = TruncationPolicy::default();
    let opts = SuiteOptions {
        timings: true,
        ..Default::default()
    };
    let all: Vec<String> = vec!["all".into()];
    let reports = run_suite_with(&all, &policy, &opts).expect("suite runs");
    let mut failed = Vec::new();
    for &(n, name, groups) in CRITERIA {
        let sel = polymaass::checks::resolve_selection(
            &groups.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        )
        .expect("known ids");
        let mine: Vec<&CheckReport> = reports
            .iter()
            .filter(|r| sel.contains(&r.check_id.as_str()))
            .collect();
        assert_eq!(mine.len(), sel.len());
        let ok = mine.iter().all(|r| r.passed);
        let detail: Vec<String> = mine
            .iter()
            .map(|r| {
                format!(
                    "{}={:.2e}/{:.0e} ({} ms)",
                    r.check_id, r.residual, r.tolerance, r.runtime_ms
                )
            })
            .collect();
        println!(
            "criterion {n:>2} {}: {name} [{}]",
            if ok { "PASS" } else { "FAIL" },
            detail.join(", ")
        );
        if !ok {
            failed.push(n);
        }
    }
    for r in reports.iter().filter(|r| r.check_id == "tilde_images") {
        println!(
            "property tilde_images {}: residual {:.2e}",
            if r.passed { "PASS" } else { "FAIL" },
            r.residual
        );
        if let Some(e) = r.inputs.get("error") {
            println!("  error: {e}");
        }
    }
    for r in reports.iter().filter(|r| !r.passed) {
        if let Some(e) = r.inputs.get("error") {
            println!("  {} error: {e}", r.check_id);
        }
    }
    if !failed.is_empty() || reports.iter().any(|r| !r.passed) {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
