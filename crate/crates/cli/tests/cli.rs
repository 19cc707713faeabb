use std::path::{Path, PathBuf};

use std::process::{Command, Output};

use sodirac_cli::csv;

fn sodirac() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sodirac"))
}

trait Run {
    fn assert(&mut self) -> Ran;
}

/// Output of a finished run, with exit-code assertions.
struct Ran(Output);

impl Run for Command {
    fn assert(&mut self) -> Ran {
        Ran(self.output().expect("binary runs"))
    }
}

impl Ran {
    fn code(self, want: i32) -> Self {
        assert_eq!(self.0.status.code(), Some(want), "stderr: {}", String::from_utf8_lossy(&self.0.stderr));
        self
    }

    fn success(self) -> Self {
        self.code(0)
    }

    fn get_output(&self) -> &Output {
        &self.0
    }
}

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn preset(name: &str) -> PathBuf {
    root().join("configs").join(name)
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const ARTANH: &str = "family.class = omega_negative\nfamily.b = 1\nfamily.u = artanh\nlabels.k = 0.5\ndirac.A = 2\ngrid.n = 401\n";

fn column(text: &str, name: &str) -> Vec<Option<f64>> {
    let (header, rows) = csv::parse(text);
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i]).collect()
}

#[test]
fn build_artanh_summary_and_w_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("model.csv");
    let a = sodirac().arg("build").arg(preset("artanh.conf")).arg("--csv").arg(&out).assert().success();
    let stdout = String::from_utf8(a.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("E^2 = 4"), "{stdout}");
    let text = std::fs::read_to_string(&out).unwrap();
    let (header, _) = csv::parse(&text);
    assert_eq!(header, ["x", "M", "v_f", "F", "G", "V_s", "W", "chi0", "chi1", "psi_plus_abs"]);
    for (x, w) in column(&text, "x").into_iter().zip(column(&text, "W")) {
        let (x, w) = (x.unwrap(), w.unwrap());
        assert!((w - (1.0 - x * x).sqrt()).abs() <= 1e-14, "x = {x}");
    }
}

#[test]
fn build_identity_w_is_sech() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "id.conf",
        "family.class = omega_negative\nfamily.b = 1\nfamily.c = 0.3\nfamily.u = identity\nlabels.k = 0.5\ndirac.A = 1\ngrid.n = 301\n",
    );
    let out = dir.path().join("id.csv");
    sodirac().arg("build").arg(&cfg).arg("--csv").arg(&out).assert().success();
    let text = std::fs::read_to_string(&out).unwrap();
    for (x, w) in column(&text, "x").into_iter().zip(column(&text, "W")) {
        let (x, w) = (x.unwrap(), w.unwrap());
        assert!((w - 1.0 / (x - 0.3).cosh()).abs() <= 1e-15);
    }
}

#[test]
fn build_leaves_w_empty_away_from_half() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "k1.conf", &ARTANH.replace("labels.k = 0.5", "labels.k = 1"));
    let out = dir.path().join("k1.csv");
    sodirac().arg("build").arg(&cfg).arg("--csv").arg(&out).assert().success();
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(column(&text, "W").iter().all(Option::is_none));
    assert!(column(&text, "chi1").iter().all(Option::is_some));
}

#[test]
fn config_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.conf", &format!("{ARTANH}ordering = custom(0.1, -1, 0.2)\n"));
    let a = sodirac().arg("build").arg(&bad).assert().code(2);
    let err = String::from_utf8(a.get_output().stderr.clone()).unwrap();
    assert!(err.contains("eta + beta + gamma = -1") && err.contains("line 7"), "{err}");

    let unknown = write_config(dir.path(), "unknown.conf", &format!("{ARTANH}grid.step = 0.1\n"));
    let a = sodirac().arg("verify").arg(&unknown).assert().code(2);
    assert!(String::from_utf8_lossy(&a.get_output().stderr).contains("grid.step"));

    let domain = write_config(dir.path(), "domain.conf", &format!("{ARTANH}grid.max = 2\n"));
    let a = sodirac().arg("build").arg(&domain).assert().code(2);
    assert!(String::from_utf8_lossy(&a.get_output().stderr).contains("domain error"));

    sodirac().arg("build").arg(dir.path().join("missing.conf")).assert().code(2);
}

fn verify_json(cfg: &Path, code: i32) -> serde_json::Value {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    sodirac().arg("verify").arg(cfg).arg("--json").arg(&json).assert().code(code);
    serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap()
}

fn status<'a>(report: &'a serde_json::Value, id: &str) -> &'a str {
    report["checks"].as_array().unwrap().iter().find(|c| c["check_id"] == id).unwrap()["status"].as_str().unwrap()
}

const CHECK_IDS: [&str; 15] = [
    "algebra.constraints",
    "algebra.omega_invariant",
    "algebra.annihilation",
    "algebra.casimir",
    "algebra.casimir_orderings",
    "algebra.ground_state_decay",
    "potentials.chi_equation",
    "potentials.psi_equation",
    "potentials.curvature_identity",
    "potentials.riccati",
    "dirac.coupled",
    "dirac.energy_sensitivity",
    "dirac.decoupled",
    "dirac.reduced",
    "spectral.oracle",
];

#[test]
fn verify_artanh_preset_passes() {
    let r = verify_json(&preset("artanh.conf"), 0);
    assert_eq!(r["verdict"], "pass");
    let ids: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    assert_eq!(ids, CHECK_IDS);
    for c in r["checks"].as_array().unwrap() {
        assert!(c["status"] == "pass" || c["status"] == "skipped", "{c}");
        if c["status"] == "skipped" {
            assert!(!c["notes"].as_str().unwrap().is_empty());
        }
    }
    assert_eq!(r["provenance"]["config"]["family.u"], "artanh");
    assert_eq!(r["schema_version"], 1);
}

#[test]
fn verify_off_half_fails_only_the_link() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "k03.conf", &ARTANH.replace("labels.k = 0.5", "labels.k = 0.3"));
    let r = verify_json(&cfg, 1);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(status(&r, "potentials.riccati"), "fail");
    for id in CHECK_IDS.iter().filter(|id| id.starts_with("algebra.")) {
        assert_ne!(status(&r, id), "fail", "{id}");
    }
    assert_eq!(status(&r, "potentials.chi_equation"), "pass");
    assert_eq!(status(&r, "dirac.coupled"), "skipped");
}

#[test]
fn verify_arccoth_sign_of_b() {
    let r = verify_json(&preset("arccoth.conf"), 0);
    assert_eq!(status(&r, "algebra.ground_state_decay"), "pass");
    assert_eq!(status(&r, "dirac.reduced"), "pass");
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(preset("arccoth.conf")).unwrap().replace("family.b = -1", "family.b = 1");
    let cfg = write_config(dir.path(), "bplus.conf", &text);
    let r = verify_json(&cfg, 1);
    assert_eq!(status(&r, "algebra.ground_state_decay"), "fail");
}

#[test]
fn verify_report_is_deterministic_and_matches_golden() {
    let cfg = golden("artanh_small.conf");
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        sodirac().arg("verify").arg(&cfg).arg("--json").arg(p).assert().success();
    }
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap(), std::fs::read_to_string(golden("verify_artanh.json")).unwrap());
}

#[test]
fn build_csv_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    sodirac().arg("build").arg(golden("artanh_small.conf")).arg("--csv").arg(&out).assert().success();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(golden("build_artanh.csv")).unwrap());
}

#[test]
fn tolerance_scale_and_grid_overrides() {
    let r = {
        let dir = tempfile::tempdir().unwrap();
        let json = dir.path().join("r.json");
        sodirac()
            .args(["--grid-n", "301", "--margin", "0.01", "--tolerance-scale", "2"])
            .arg("verify")
            .arg(preset("artanh.conf"))
            .arg("--json")
            .arg(&json)
            .assert()
            .success();
        serde_json::from_str::<serde_json::Value>(&std::fs::read_to_string(&json).unwrap()).unwrap()
    };
    assert_eq!(r["provenance"]["grid"]["n"], 301);
    assert_eq!(r["provenance"]["grid"]["margin"], 0.01);
    assert_eq!(r["checks"][0]["tolerance"], 2e-8);
    sodirac().args(["--tolerance-scale", "0", "verify"]).arg(preset("artanh.conf")).assert().code(2);
}

fn spectrum_rows(cfg: &Path, ks: &str) -> Vec<Vec<String>> {
    let a = sodirac().arg("spectrum").arg(cfg).arg("--k-list").arg(ks).assert().success();
    String::from_utf8(a.get_output().stdout.clone())
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect()
}

#[test]
fn spectrum_tables() {
    let rows = spectrum_rows(&preset("artanh.conf"), "0,0.5,1,2");
    let e2: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(e2, [3.75, 4.0, 3.75, 1.75]);

    let dir = tempfile::tempdir().unwrap();
    let a05 = write_config(dir.path(), "a05.conf", &ARTANH.replace("dirac.A = 2", "dirac.A = 0.5"));
    let rows = spectrum_rows(&a05, "1");
    assert_eq!(rows[0][1..], ["0", "0", "real"]);

    let a1 = write_config(dir.path(), "a1.conf", &ARTANH.replace("dirac.A = 2", "dirac.A = 1"));
    let rows = spectrum_rows(&a1, "3");
    assert_eq!(rows[0][2..], ["-", "complex"]);
}

#[test]
fn spectrum_oracle_column() {
    let a = sodirac().arg("spectrum").arg(preset("constant_mass.conf")).args(["--k-list", "1", "--oracle"]).assert().success();
    let out = String::from_utf8(a.get_output().stdout.clone()).unwrap();
    assert!(out.contains("lowest eigenvalue -0.250") && out.contains("(pass)"), "{out}");
}

#[test]
fn figures_match_golden_and_exclude_the_gap() {
    let dir = tempfile::tempdir().unwrap();
    let a = sodirac().arg("figures").arg(golden("figures.conf")).arg("--out").arg(dir.path()).assert().success();
    let listed = String::from_utf8(a.get_output().stdout.clone()).unwrap();
    assert_eq!(listed.lines().count(), 8);
    for b in ["0.5", "1", "2", "5"] {
        let name = format!("figure1_b_{b}.csv");
        assert_eq!(std::fs::read(dir.path().join(&name)).unwrap(), std::fs::read(golden(&name)).unwrap(), "{name}");
    }
    for b in ["-0.5", "-1", "-2", "-5"] {
        let name = format!("figure2_b_{b}.csv");
        let text = std::fs::read_to_string(dir.path().join(&name)).unwrap();
        assert_eq!(text, std::fs::read_to_string(golden(&name)).unwrap(), "{name}");
        assert!(column(&text, "x").iter().all(|x| x.unwrap().abs() >= 1.0));
    }
}

#[test]
fn figures_selection_and_output_override() {
    let dir = tempfile::tempdir().unwrap();
    sodirac()
        .arg("figures")
        .arg(golden("figures.conf"))
        .args(["--which", "2", "--b2", "-3"])
        .env("SODIRAC_OUT_DIR", dir.path())
        .assert()
        .success();
    let names: Vec<String> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(names, ["figure2_b_-3.csv"]);
    sodirac().arg("figures").arg(golden("figures.conf")).env_remove("SODIRAC_OUT_DIR").assert().code(2);
    sodirac().arg("figures").arg(golden("figures.conf")).args(["--out", "x", "--which", "3"]).assert().code(2);
}
