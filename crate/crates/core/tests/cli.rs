//! The radokit binary: exit codes, determinism, golden outputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn radokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radokit")).args(args).env_remove("RADOKIT_BUDGET").output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("radokit-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn golden(name: &str, got: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert!(want == got, "{name} differs from the golden file; rerun with UPDATE_GOLDEN=1 if intended");
}

#[test]
fn diagram_is_stable_and_matches_golden() {
    let a = radokit(&["diagram"]);
    let b = radokit(&["diagram"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    golden("diagram.json", &String::from_utf8(a.stdout).unwrap());
}

#[test]
fn construct_writes_identical_bundles() {
    let (x, y) = (scratch("g1a"), scratch("g1b"));
    for d in [&x, &y] {
        let o = radokit(&["construct", "g1", "--v", "0", "--out", d.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["bundle.json", "results.json", "tables/g.perm"] {
        let (a, b) = (std::fs::read(x.join(f)).unwrap(), std::fs::read(y.join(f)).unwrap());
        assert_eq!(a, b, "{f}");
    }
    golden("g1-bundle.json", &std::fs::read_to_string(x.join("bundle.json")).unwrap());
    let back = radokit::constructions::Bundle::read_dir(&x).unwrap();
    assert_eq!(back.tables["g"].to_text(), std::fs::read_to_string(x.join("tables/g.perm")).unwrap());
}

#[test]
fn classify_a_written_table() {
    let d = scratch("cls");
    assert_eq!(radokit(&["construct", "antiauto", "--out", d.to_str().unwrap()]).status.code(), Some(0));
    let o = radokit(&["--window", "12", "classify", d.join("tables/g.perm").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdicts"]["S"]["kind"], "refuted");
    assert_eq!(v["verdicts"]["Aut"]["kind"], "refuted");
}

#[test]
fn verify_iso_passes() {
    let o = radokit(&["verify", "iso"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["failures"], 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(radokit(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(radokit(&["construct", "g4", "--p", "0"]).status.code(), Some(2));
    assert_eq!(radokit(&["construct", "g1", "--v", "0", "--stages", "3"]).status.code(), Some(2));
    assert_eq!(radokit(&["construct", "g7"]).status.code(), Some(2));
    assert_eq!(radokit(&["--window", "0", "verify", "iso"]).status.code(), Some(2));
    assert_eq!(radokit(&["frobnicate"]).status.code(), Some(2));
    let d = scratch("bad");
    std::fs::create_dir_all(&d).unwrap();
    std::fs::write(d.join("bad.perm"), "# source: base\n0\t0\nzz\n").unwrap();
    let o = radokit(&["classify", d.join("bad.perm").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn exhausted_budget_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_radokit"))
        .args(["construct", "g6", "--v", "0"])
        .env("RADOKIT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_radokit")).args(["verify", "iso"]).env("RADOKIT_BUDGET", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
