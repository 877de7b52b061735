use std::process::Command;

fn run(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_frey13"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.success(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (ok, out) = run(&full);
    assert!(ok, "{out}");
    serde_json::from_str(&out).expect("valid JSON")
}

fn claim<'a>(report: &'a serde_json::Value, id: &str) -> &'a serde_json::Value {
    report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("missing {id}"))
}

#[test]
fn bound_reports_both_bounds() {
    let r = json(&["bound"]);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(
        claim(&r, "bound.irreducibility")["values"]["max_prime"],
        "97"
    );
    assert_eq!(claim(&r, "bound.s2-printed")["values"]["bound"], "4992539");
    assert_eq!(claim(&r, "bound.s2-printed")["status"], "verified");
}

#[test]
fn traces_with_d() {
    let r = json(&["traces", "--d", "7", "--workers", "2"]);
    assert_eq!(
        claim(&r, "traces.d7")["values"]["sets"]["L7"],
        serde_json::json!([-11])
    );
    assert_eq!(claim(&r, "traces.sets")["status"], "verified");
}

#[test]
fn unknown_d_fails_with_nonzero_exit() {
    let (ok, out) = run(&["traces", "--d", "13"]);
    assert!(!ok);
    assert!(out.contains("[failed] traces.d13"), "{out}");
}

#[test]
fn json_is_reproducible() {
    let a = run(&["eliminate", "--part", "II", "--format", "json"]);
    let b = run(&["eliminate", "--part", "II", "--format", "json"]);
    assert!(a.0);
    assert_eq!(a.1, b.1);
    assert!(!a.1.contains("elapsed_ms"));
}

#[test]
fn missing_data_dir_is_reported() {
    let (ok, out) = run(&["bound", "--data-dir", "/nonexistent"]);
    assert!(!ok);
    assert!(out.contains("[failed] bound.s2-printed"), "{out}");
}

#[test]
fn text_output_and_timings() {
    let (ok, out) = run(&["eliminate", "--d", "5", "--timings"]);
    assert!(ok, "{out}");
    assert!(out.contains("[verified] eliminate.d5"));
    assert!(out.contains("[assumption] eliminate.f4-inertia"));
    assert!(out.contains("time: "));
}
