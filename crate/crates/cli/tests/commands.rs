use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;
use tempfile::TempDir;

fn qnc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qnc")).args(args).current_dir(dir).output().expect("qnc runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

/// f_1..f_6 built once at the default settings and shared by the tests.
fn family() -> &'static Path {
    static DIR: OnceLock<TempDir> = OnceLock::new();
    DIR.get_or_init(|| {
        let dir = TempDir::new().unwrap();
        for n in 1..=6 {
            let name = format!("f{n}.json");
            let out = qnc(&["construct", "-n", &n.to_string(), "-o", &name], dir.path());
            assert_eq!(code(&out), 0, "{}", stderr(&out));
        }
        dir
    })
    .path()
}

fn member(n: u32) -> PathBuf {
    family().join(format!("f{n}.json"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_trivial_member() {
    let file: Value = serde_json::from_str(&std::fs::read_to_string(member(1)).unwrap()).unwrap();
    assert_eq!(file["a"], "4");
    assert_eq!(file["schema_version"], 1);
    let coeffs = file["p_coeffs"].as_array().unwrap();
    assert!(coeffs.iter().flat_map(|c| c.as_array().unwrap()).all(|v| v == "0"));
}

#[test]
fn construct_rejects_order_zero() {
    let dir = TempDir::new().unwrap();
    let out = qnc(&["construct", "-n", "0", "-o", "f0.json"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("n must be ≥ 1"));
    assert!(!dir.path().join("f0.json").exists());
    let out = qnc(&["construct", "-n", "0"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    for name in ["a.json", "b.json"] {
        assert_eq!(code(&qnc(&["construct", "-n", "2", "-o", name], dir.path())), 0);
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());
    assert_eq!(a, std::fs::read(member(2)).unwrap());
}

#[test]
fn construct_bad_settings_exit_two() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["construct", "-n", "2", "--grid", "8", "-o", "f.json"][..],
        &["construct", "-n", "2", "--precision", "8", "-o", "f.json"],
        &["construct", "-n", "two", "-o", "f.json"],
    ] {
        assert_eq!(code(&qnc(args, dir.path())), 2, "{args:?}");
    }
}

#[test]
fn construct_at_extended_precision() {
    let dir = TempDir::new().unwrap();
    let out = qnc(&["construct", "-n", "3", "--precision", "128", "--grid", "128", "-o", "f3.json"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let file: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("f3.json")).unwrap()).unwrap();
    assert_eq!(file["precision_bits"], 128);
    let out = qnc(&["verify", "f3.json", "--samples", "500"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn verify_trivial_member() {
    let out = qnc(&["verify", s(&member(1))], family());
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["command"], "verify");
    assert_eq!(r["passed"], true);
    let checks = r["report"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert_eq!(names, ["inequality", "node_jets", "max_modulus"]);
    assert_eq!(checks[0]["max_inequality"], "0");
    assert!(r["timestamp"].as_str().unwrap().ends_with('Z'));
}

#[test]
fn verify_second_member() {
    let out = qnc(&["verify", s(&member(2))], family());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(report(&out)["report"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_corrupted_coefficient_fails() {
    let dir = TempDir::new().unwrap();
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(member(2)).unwrap()).unwrap();
    let c = &mut file["p_coeffs"][2][0];
    let v: f64 = c.as_str().unwrap().parse().unwrap();
    *c = Value::String((v + 0.1).to_string());
    std::fs::write(dir.path().join("bad.json"), serde_json::to_string(&file).unwrap()).unwrap();
    let out = qnc(&["verify", "bad.json"], dir.path());
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["passed"], false);
}

#[test]
fn malformed_files_exit_two_without_panicking() {
    let dir = TempDir::new().unwrap();
    let good = std::fs::read_to_string(member(2)).unwrap();
    let cases = [
        ("empty.json", String::new()),
        ("trunc.json", good[..good.len() / 2].to_string()),
        ("list.json", "[1, 2, 3]".to_string()),
        ("schema.json", good.replace("\"schema_version\": 1", "\"schema_version\": 9")),
        ("nan.json", good.replacen("\"0\"", "\"NaN\"", 1)),
        ("order.json", good.replace("\"n\": 2", "\"n\": 4000000000")),
        ("grid.json", good.replace("\"grid\": 1024", "\"grid\": 0")),
        ("bits.json", good.replace("\"precision_bits\": 53", "\"precision_bits\": 1")),
        ("extra.json", good.replacen('{', "{\"extra\": 1,", 1)),
        ("a.json", good.replace("\"a\": \"", "\"a\": \"-")),
    ];
    for (name, text) in cases {
        std::fs::write(dir.path().join(name), text).unwrap();
        for args in [
            &["verify", name][..],
            &["probe", "marty", name],
            &["grid", name, "--what", "fk", "--region", "disk:2", "--resolution", "4", "--export", "o.csv"],
        ] {
            let out = qnc(args, dir.path());
            assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
            assert!(!stderr(&out).contains("panicked"), "{args:?}");
        }
    }
    assert_eq!(code(&qnc(&["verify", "missing.json"], dir.path())), 2);
}

#[test]
fn marty_probe_over_the_family() {
    let files: Vec<PathBuf> = (1..=6).map(member).collect();
    let mut args = vec!["probe", "marty"];
    args.extend(files.iter().map(|p| s(p)));
    args.extend(["--center", "1+0i", "--radius", "0.1"]);
    let out = qnc(&args, family());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["report"]["verdict"], "blowup");
    assert_eq!(r["report"]["measurements"].as_array().unwrap().len(), 6);
    assert_eq!(r["inputs"].as_array().unwrap().len(), 6);
}

#[test]
fn lemma2_probe_over_the_family() {
    let files: Vec<PathBuf> = (2..=6).map(member).collect();
    let mut args = vec!["probe", "lemma2"];
    args.extend(files.iter().map(|p| s(p)));
    args.extend(["--points", "0", "--orders", "2"]);
    let out = qnc(&args, family());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    for (n, m) in (2..=6).zip(r["report"]["measurements"].as_array().unwrap()) {
        let ln = m.as_str().unwrap();
        // Decimal strings beyond the double range parse as 0 here, which
        // is still below 1/n.
        let v: f64 = ln.parse().unwrap_or(0.0);
        assert!(v <= 1.0 / n as f64, "n={n}: {ln}");
    }
}

#[test]
fn probe_argument_errors_exit_two() {
    let f2 = member(2);
    for args in [
        &["probe", "marty", s(&f2), "--center", "0.5+0i"][..],
        &["probe", "lemma2", s(&f2), "--points", "1.05"],
        &["probe", "lemma2", s(&f2), "--points", "1 + 2i"],
        &["probe", "lemma2", s(&f2), "--orders", "3"],
        &["probe", "marty", s(&f2), "--radius", "-1"],
        &["probe", "marty"],
    ] {
        let out = qnc(args, family());
        assert_eq!(code(&out), 2, "{args:?}");
    }
}

#[test]
fn reversed_family_is_not_a_blowup() {
    let out = qnc(&["probe", "marty", s(&member(3)), s(&member(2))], family());
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["report"]["verdict"], "bounded");
}

fn csv_rows(path: &Path) -> Vec<[f64; 3]> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.split('\n');
    assert_eq!(lines.next(), Some("re,im,value"));
    assert!(text.ends_with('\n') && !text.contains('\r'));
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(v.len(), 3);
            assert!(v.iter().all(|x| x.is_finite()), "{l}");
            [v[0], v[1], v[2]]
        })
        .collect()
}

#[test]
fn grid_of_the_trivial_member_on_a_circle() {
    let dir = TempDir::new().unwrap();
    let out = qnc(
        &["grid", s(&member(1)), "--what", "sphder", "--region", "circle:2", "--resolution", "8", "--export", "g.csv"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = csv_rows(&dir.path().join("g.csv"));
    assert_eq!(rows.len(), 8);
    // f₁ = 4(z − 1): f^# = 4/(1 + 16|z − 1|²).
    for [re, im, v] in rows {
        assert!((re.hypot(im) - 2.0).abs() < 1e-14);
        let d2 = (re - 1.0).powi(2) + im * im;
        let want = 4.0 / (1.0 + 16.0 * d2);
        assert!((v - want).abs() <= 1e-15 * want, "{v} vs {want}");
    }
    let out = qnc(
        &["grid", s(&member(1)), "--what", "fk", "--region", "circle:2", "--resolution", "8", "--export", "k.csv"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    assert!(csv_rows(&dir.path().join("k.csv")).iter().all(|r| r[2] == 0.0));
}

#[test]
fn grid_rejects_zero_resolution_and_bad_regions() {
    let dir = TempDir::new().unwrap();
    let f1 = member(1);
    for args in [
        &["--resolution", "0", "--region", "circle:2", "--what", "fk"][..],
        &["--resolution", "8", "--region", "square:2", "--what", "fk"],
        &["--resolution", "8", "--region", "annulus:2:1", "--what", "fk"],
        &["--resolution", "8", "--region", "circle:2", "--what", "modulus"],
    ] {
        let mut all = vec!["grid", s(&f1), "--export", "g.csv"];
        all.extend_from_slice(args);
        assert_eq!(code(&qnc(&all, dir.path())), 2, "{args:?}");
    }
    assert!(!dir.path().join("g.csv").exists());
}

#[test]
fn ratio_grid_omits_node_neighbourhoods() {
    let dir = TempDir::new().unwrap();
    let out = qnc(
        &["grid", s(&member(2)), "--what", "ratio", "--region", "circle:1", "--resolution", "64", "--export", "r.csv"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&dir.path().join("r.csv"));
    assert_eq!(rows.len(), 62);
    for [re, im, _] in rows {
        assert!((re - 1.0).hypot(im) > 1e-3 && (re + 1.0).hypot(im) > 1e-3);
    }
    assert!(stderr(&out).contains("64 grid points, 2 excluded"));
}

#[test]
fn log_export_and_wide_values() {
    let dir = TempDir::new().unwrap();
    let out = qnc(
        &["grid", s(&member(6)), "--what", "sphder", "--region", "disk:2", "--resolution", "6", "--export", "w.csv"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.path().join("w.csv")).unwrap();
    // Values below the double range are written as exact wide decimals.
    assert!(text.lines().skip(1).any(|l| l.rsplit(',').next().unwrap().contains("e-")));
    let out = qnc(
        &["grid", s(&member(6)), "--what", "sphder", "--region", "disk:2", "--resolution", "6", "--export", "l.csv", "--log"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let logs = csv_rows(&dir.path().join("l.csv"));
    assert_eq!(logs.len(), text.lines().count() - 1);
    assert!(logs.iter().all(|r| r[2] < 0.0));
}

#[test]
fn sweep_over_the_first_six_members() {
    let dir = TempDir::new().unwrap();
    let out = qnc(&["sweep", "--n-range", "1..6", "-o", "report.json"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(saved, r);
    let rows = r["report"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["c_hat"], "0");
    assert_eq!(rows[0]["max_inequality"], "0");
    assert_eq!(r["report"]["marty_verdict"], "blowup");
    for (n, row) in (1..=6).zip(rows) {
        assert_eq!(row["n"], n);
        assert_eq!(row["passed"], true);
        assert!(row["degree"].as_u64().unwrap() <= 4 * n - 1);
    }
}

#[test]
fn sweep_validates_its_range() {
    let dir = TempDir::new().unwrap();
    for range in ["3..2", "0..2", "2", "a..b"] {
        assert_eq!(code(&qnc(&["sweep", "--n-range", range], dir.path())), 2, "{range}");
    }
    assert_eq!(code(&qnc(&["sweep", "--n-range", "1..2", "--precision", "2"], dir.path())), 2);
}

#[test]
fn sweep_reports_partial_results_on_failure() {
    let dir = TempDir::new().unwrap();
    let out = qnc(&["sweep", "--n-range", "6..7", "--samples", "200", "--grid", "128"], dir.path());
    assert_eq!(code(&out), 1);
    let rows = report(&out)["report"]["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["passed"], true);
    assert_eq!(rows[1]["passed"], false);
    assert!(rows[1]["error"].as_str().unwrap().contains("residual"));
}
