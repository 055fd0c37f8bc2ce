use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn inputs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/inputs")
}

fn dgloci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgloci")).args(args).output().expect("binary runs")
}

fn input(name: &str) -> String {
    inputs().join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Compares against a checked-in file; `DGLOCI_UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("DGLOCI_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn trivial_extension_report_matches_golden() {
    for (format, file) in [("json", "nodes_trivial_ext.report.json"), ("text", "nodes_trivial_ext.report.txt")] {
        let o = dgloci(&["report", "--format", format, &input("nodes_trivial_ext.toml")]);
        assert!(o.status.success(), "{}", stderr(&o));
        check_golden(file, &stdout(&o));
    }
}

#[test]
fn golden_report_agrees_with_hand_computation() {
    let o = dgloci(&["report", "--format", "json", &input("nodes_trivial_ext.toml")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v["result"];
    assert_eq!(r["reg"]["strata"], serde_json::json!([]));
    assert_eq!(r["gor"]["status"], "empty_certified");
    assert_eq!(r["cm_exact"]["strata"], serde_json::json!([{ "closed": ["x*y"], "open": ["1"] }]));
    assert_eq!(
        r["cm_dense_open"]["strata"],
        serde_json::json!([{ "closed": ["x*y"], "open": ["x"] }, { "closed": ["x*y"], "open": ["y"] }])
    );
    assert_eq!(r["cohomology"]["bounds"]["amplitude"], 2);
    assert_eq!(r["dualizing"]["cohomology"]["bounds"], serde_json::json!({ "inf": -1, "sup": 1, "amplitude": 2 }));
}

#[test]
fn every_command_runs_on_the_sample() {
    for cmd in ["cohomology", "dualizing", "reg", "cm", "gor", "cover", "report"] {
        let o = dgloci(&[cmd, &input("nodes_trivial_ext.toml")]);
        assert!(o.status.success(), "{cmd}: {}", stderr(&o));
        assert!(stdout(&o).contains(&format!("command: {cmd}")));
    }
    let o = dgloci(&["cm", "--mode", "dense-open", &input("nodes_trivial_ext.toml")]);
    assert!(stdout(&o).contains("is_dense_open: true"), "{}", stdout(&o));
}

#[test]
fn cusp_regular_locus() {
    let o = dgloci(&["reg", "--format", "json", &input("cusp.toml")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let strata = v["result"]["reg"]["strata"].as_array().unwrap().clone();
    assert_eq!(strata.len(), 1);
    assert_eq!(strata[0]["closed"], serde_json::json!(["x^3 - y^2"]));
}

#[test]
fn regular_sequence_cohomology_is_a_single_entry() {
    let o = dgloci(&["cohomology", "--format", "json", &input("koszul_xyz.toml")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let degrees = v["result"]["cohomology"]["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 1);
    assert_eq!(degrees[0]["degree"], 0);
    assert_eq!(degrees[0]["length"], 1);
}

#[test]
fn flags_override_options() {
    let o = dgloci(&["cohomology", "--order", "lex", &input("cusp.toml")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("order: lex"));
    let o = dgloci(&["gor", "--candidates", "x,y", "--seed", "3", &input("cusp.toml")]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("regular_sequence: [x]"), "{}", stdout(&o));
    let o = dgloci(&["cohomology", "--order", "elim", &input("cusp.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--order"));
    let o = dgloci(&["gor", "--candidates", "x+q", &input("cusp.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--candidates"));
}

#[test]
fn parse_errors_exit_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "[ring]\nfield = \"F5\"\nvars = [\"x\", \"y\"]\nideal = [\"x*y + z\"]\n[dg]\nkind = \"koszul\"\n")
        .unwrap();
    let o = dgloci(&["cohomology", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("line 4, column 17") && err.contains("[ring]") && err.contains("`z`"), "{err}");

    let o = dgloci(&["cohomology", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unsupported_and_resource_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("no_primes.toml");
    std::fs::write(
        &path,
        "[ring]\nfield = \"F5\"\nvars = [\"x\", \"y\"]\nideal = [\"y^2 - x^3\"]\n[dg]\nkind = \"koszul\"\n",
    )
    .unwrap();
    let o = dgloci(&["reg", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("reg:"));
    // the full report marks the section unavailable instead
    let o = dgloci(&["report", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("unavailable:"));

    let o = dgloci(&["dualizing", "--window", "1", &input("plane_and_line.toml")]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("window"));
}

#[test]
fn unit_ideal_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unit.toml");
    std::fs::write(&path, "[ring]\nfield = \"QQ\"\nvars = [\"x\"]\nideal = [\"x\", \"x - 1\"]\n[dg]\nkind = \"koszul\"\n")
        .unwrap();
    let o = dgloci(&["cohomology", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: ring:"), "{}", stderr(&o));
}
