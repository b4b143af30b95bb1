//! End-to-end checks of the `nhband` binary: determinism across worker
//! counts, config error reporting, exit codes, and manifest integrity.

use sha2::{Digest, Sha256};
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nhband"))
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("run.cfg");
    std::fs::write(&path, text).unwrap();
    path
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

const QUENCH_CFG: &str = "\
task = quench
model.family = lkc
model.v = 0.3
time.stop = 4
time.step = 0.001
grid.n_k = 256
";

#[test]
fn outputs_are_byte_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), QUENCH_CFG);
    for (out, workers) in [("a", "1"), ("b", "4")] {
        let status = bin()
            .args(["quench", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(dir.path().join(out))
            .args(["--workers", workers])
            .status()
            .unwrap();
        assert!(status.success());
    }
    for name in ["quench.csv", "critical_times.json"] {
        let a = std::fs::read(dir.path().join("a").join(name)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between worker counts");
    }
}

#[test]
fn config_problems_are_all_reported_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "model.family = lkc\nmodel.v = abc\nmodel.nope = 1\ntime.step = -2\n",
    );
    let output = bin()
        .args(["quench", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("`model.v` must be a finite number"));
    assert!(stderr.contains("unknown key `model.nope`"));
    assert!(stderr.contains("`time.step` must be > 0"));
    // nothing should have been produced
    assert!(!dir.path().join("out").join("quench.csv").exists());
}

#[test]
fn numerical_domain_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    // gapless point: u^2/J^2 + v^2/Delta^2 = 1 exactly
    let cfg = write_config(dir.path(), "model.family = lkc\nmodel.v = 1.0\n");
    let output = bin()
        .args(["report", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("gapless"));
}

#[test]
fn manifest_checksums_match_emitted_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), QUENCH_CFG);
    let out = dir.path().join("out");
    let status = bin()
        .args(["quench", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out.join("manifest.json")).unwrap()).unwrap();
    let outputs = manifest["outputs"].as_object().unwrap();
    assert!(!outputs.is_empty());
    for (name, digest) in outputs {
        let bytes = std::fs::read(out.join(name)).unwrap();
        assert_eq!(
            digest.as_str().unwrap(),
            sha256_hex(&bytes),
            "checksum mismatch for {name}"
        );
    }
    // the config echo round-trips the input keys
    assert_eq!(manifest["config"]["model.v"], "0.3");
    assert_eq!(manifest["task"], "quench");
}

#[test]
fn report_trivial_lkc_names_no_dqpts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "model.family = lkc\nmodel.v = 1.3\n");
    let out = dir.path().join("out");
    let status = bin()
        .args(["report", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out.join("report.json")).unwrap()).unwrap();
    assert!(report["winding"]["w"].as_f64().unwrap().abs() < 1e-6);
    assert_eq!(report["consistent"], true);
    assert!(report["table_row"]["critical_structure"]
        .as_str()
        .unwrap()
        .contains("no DQPTs"));
}

#[test]
fn mismatched_task_key_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "task = quench\nmodel.family = lkc\nmodel.v = 0.3\n");
    let output = bin()
        .args(["spectrum", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}
