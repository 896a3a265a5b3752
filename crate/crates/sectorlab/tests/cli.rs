//! End-to-end tests of the sectorlab binary: exit codes, JSON output,
//! matrix I/O, demos, and replay.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sectorlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_matrix(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn verify_passes_on_pd_campaign() {
    let out = run(&["verify", "chan301", "--trials", "100", "--dim", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("100 passes"));
}

#[test]
fn verify_rejects_bad_theta_and_unknown_id() {
    let out = run(&["verify", "t2", "--theta", "2.0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "unknown_id"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("chan301") && err.contains("t3v2"), "{err}");
}

#[test]
fn verify_negative_control_exits_one_with_counterexample() {
    let out = run(&["verify", "negctl", "--trials", "50", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("counterexample"));
}

#[test]
fn verify_json_agrees_with_human_counters() {
    let json_out = run(&["verify", "e41", "--trials", "60", "--seed", "5", "--json"]);
    assert_eq!(json_out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["counters"]["trials_run"], 60);
    let human = run(&["verify", "e41", "--trials", "60", "--seed", "5"]);
    let line = stdout(&human);
    let passes = report["counters"]["passes"].as_u64().unwrap();
    assert!(line.contains(&format!("{passes} passes")), "{line}");
}

#[test]
fn env_seed_fallback_matches_explicit_seed() {
    let explicit = run(&["verify", "e25", "--trials", "30", "--seed", "21", "--json"]);
    let via_env = bin()
        .args(["verify", "e25", "--trials", "30", "--json"])
        .env("SECTORLAB_SEED", "21")
        .output()
        .unwrap();
    let a: serde_json::Value = serde_json::from_str(&stdout(&explicit)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&String::from_utf8_lossy(&via_env.stdout)).unwrap();
    assert_eq!(a["content_hash"], b["content_hash"]);
}

#[test]
fn angle_reports_radians_degrees_and_non_accretive() {
    let dir = tempfile::tempdir().unwrap();
    let one = write_matrix(dir.path(), "one.json", r#"{"dim":1,"re":[[1.0]],"im":[[1.0]]}"#);
    let out = run(&["angle", &one]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0.7853981634"));
    assert!(stdout(&out).contains("45.000000"));

    let hermitian = write_matrix(
        dir.path(),
        "pd.json",
        r#"{"dim":2,"re":[[2.0,0.0],[0.0,3.0]],"im":[[0.0,0.0],[0.0,0.0]]}"#,
    );
    let out = run(&["angle", &hermitian]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("0.0000000000"));

    let twoi = write_matrix(dir.path(), "twoi.json", r#"{"dim":1,"re":[[0.0]],"im":[[2.0]]}"#);
    let out = run(&["angle", &twoi]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not accretive"));

    let out = run(&["angle", "/nonexistent/matrix.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_output_is_valid_and_seed_deterministic() {
    let a = run(&["gen", "--dim", "3", "--theta", "0.4", "--seed", "11"]);
    let b = run(&["gen", "--dim", "3", "--theta", "0.4", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(parsed["dim"], 3);
    // generated matrix must certify within the requested angle
    let dir = tempfile::tempdir().unwrap();
    let path = write_matrix(dir.path(), "gen.json", &stdout(&a));
    let angle = run(&["angle", &path, "--degrees"]);
    let deg: f64 = stdout(&angle).trim().parse().unwrap();
    assert!(deg <= 0.4f64.to_degrees() + 1e-9, "angle {deg}");
}

#[test]
fn demo_remark_golden_transcript() {
    let out = run(&["demo", "remark"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for needle in [
        "spectrum of Re(A o B): {0.0, 4.0}",
        "difference spectrum: {-1.0, 3.0}",
        "|difference|_spectral = 3.0",
        "equality fails as expected",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
    }
}

#[test]
fn demo_one_dim_and_collapse() {
    let out = run(&["demo", "one-dim"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0+2i"));
    assert!(stdout(&out).contains("not accretive"));

    let out = run(&["demo", "collapse"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all residual deltas below 1e-9"));

    let out = run(&["demo", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_writes_reports_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["verify-all", "--trials", "20", "--seed", "9", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let csv = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert!(csv.starts_with("theorem_id,trials,"));
    // 21 theorem rows + header; negctl is excluded from the suite
    assert_eq!(csv.trim().lines().count(), 22);
    assert!(!csv.contains("negctl"));
    assert!(dir.path().join("chan301.json").exists());
}

#[test]
fn replay_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = bin()
        .args(["verify", "t2", "--trials", "40", "--seed", "13", "--out"])
        .arg(&report_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = bin().arg("replay").arg(&report_path).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    // tampering with the embedded seed must be detected
    let body = std::fs::read_to_string(&report_path).unwrap();
    let tampered = body.replace("\"seed\": 13", "\"seed\": 14");
    assert_ne!(body, tampered);
    let bad_path = dir.path().join("tampered.json");
    std::fs::write(&bad_path, tampered).unwrap();
    let out = bin().arg("replay").arg(&bad_path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let out = bin().arg("replay").arg(&empty).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
