use super::*;

fn ids(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn empty_selection_is_empty() {
    assert!(run_suite(&[], &TruncationPolicy::default())
        .unwrap()
        .is_empty());
}

#[test]
fn unknown_id_lists_valid_ids() {
    match run_suite(&ids(&["nope"]), &TruncationPolicy::default()) {
        Err(Error::UnknownCheck { id, valid }) => {
            assert_eq!(id, "nope");
            assert!(valid.contains("duality"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn groups_and_order() {
    let sel =
        resolve_selection(&ids(&["whittaker", "duality", "ramanujan_m2", "duality"])).unwrap();
    assert_eq!(
        sel,
        vec![
            "duality",
            "ramanujan_m2",
            "whittaker_closed_forms",
            "whittaker_mmw",
            "whittaker_ode",
            "whittaker_wronskian"
        ]
    );
    assert_eq!(
        resolve_selection(&ids(&["all"])).unwrap().len(),
        check_ids().len()
    );
    let mut sorted = check_ids();
    sorted.sort_unstable();
    assert_eq!(sorted, check_ids());
    assert!(resolve_selection(&ids(&["ramanujan_m"])).is_err());
}

#[test]
fn duality_is_exact() {
    let r = run_suite(&ids(&["duality"]), &TruncationPolicy::default()).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r[0].passed);
    assert_eq!(r[0].residual, 0.0);
    assert_eq!(r[0].inputs["c_max"], "10000");
}

#[test]
fn ramanujan_m1_passes() {
    let r = run_suite(&ids(&["ramanujan_m1"]), &TruncationPolicy::default()).unwrap();
    assert!(r[0].passed && r[0].residual < 1e-3, "{:?}", r[0]);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let sel = ids(&["golden_coefficients", "whittaker"]);
    let a = run_suite(&sel, &TruncationPolicy::default()).unwrap();
    let b = run_suite(&sel, &TruncationPolicy::default()).unwrap();
    let (ja, jb) = (
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap(),
    );
    assert_eq!(ja, jb);
    let back: Vec<CheckReport> = serde_json::from_str(&ja).unwrap();
    assert_eq!(back, a);
    assert!(a.iter().all(|r| r.passed && r.runtime_ms == 0), "{a:?}");
}

#[test]
fn csv_schema() {
    let r = CheckReport::new("x", BTreeMap::new(), 0.5, 1.0);
    let csv = reports_to_csv(&[r]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("check_id,residual,tolerance,passed,runtime_ms")
    );
    assert_eq!(lines.next(), Some("x,5e-1,1e0,true,0"));
}

#[test]
fn errored_check_is_a_failure() {
    let mut inputs = BTreeMap::new();
    inputs.insert("error".into(), "boom".into());
    let r = CheckReport::new("x", inputs, f64::INFINITY, 0.0);
    assert!(!r.passed);
    let j = serde_json::to_string(&r).unwrap();
    assert!(j.contains("\"residual\":null"));
    let back: CheckReport = serde_json::from_str(&j).unwrap();
    assert_eq!(back, r);
}

#[test]
fn modularity_points_are_in_range() {
    let p = modularity_points(3, 50);
    assert_eq!(p, modularity_points(3, 50));
    for z in p {
        let w = -z.z().inv();
        assert!(z.y > 0.5 && w.im > 0.5);
    }
}

#[test]
fn operator_checks_on_tables() {
    let pol = TruncationPolicy::default();
    let r = check_operator_on_table(
        false,
        0,
        -1,
        0,
        EvalPoint::new(0.0, 1.0).unwrap(),
        1e-5,
        &pol,
    )
    .unwrap();
    assert!(r.passed, "{r:?}");
    let r = check_operator_on_table(
        true,
        0,
        -1,
        1,
        EvalPoint::new(0.0, 1.0).unwrap(),
        1e-6,
        &pol,
    )
    .unwrap();
    assert!(r.passed, "{r:?}");
}
