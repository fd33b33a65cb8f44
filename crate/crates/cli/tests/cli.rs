use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use locinfo::{BipartiteDims, StateFamily, Werner};
use locinfo_cli::StateFile;
use serde_json::Value;

fn bounds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn bounds_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bounds"))
        .args(args)
        .env("BOUNDS_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Csv {
        let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
        let header = lines.next().unwrap().split(',').map(String::from).collect();
        let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
        Csv { header, rows }
    }

    fn col(&self, name: &str) -> Vec<f64> {
        let i = self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i].parse().unwrap()).collect()
    }
}

const HEADER: &str = "family,d,param,I,B1,B2,rP,deltaB,deltaP,ER,EF";

#[test]
fn werner_d3_sweep() {
    let o = bounds(&["sweep", "--family", "werner", "--d", "3", "--from", "-1", "--to", "1", "--step", "0.01"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with(&format!("{HEADER}\r\n")));
    let csv = Csv::parse(&text);
    assert_eq!(csv.rows.len(), 201);
    let (beta, info, b2) = (csv.col("param"), csv.col("I"), csv.col("B2"));
    for i in 0..201 {
        if beta[i] >= -1.0 / 3.0 {
            assert!((b2[i] - info[i]).abs() < 1e-9, "β={} B2={} I={}", beta[i], b2[i], info[i]);
        }
    }
}

#[test]
fn isotropic_endpoint_row() {
    let o = bounds(&["sweep", "--family", "isotropic", "--d", "3", "--from", "0.9", "--to", "1", "--step", "0.05"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = Csv::parse(&stdout(&o));
    assert_eq!(csv.rows.len(), 3);
    let last = csv.rows.len() - 1;
    assert_eq!(csv.col("param")[last], 1.0);
    assert!((csv.col("B2")[last] - 3f64.log2()).abs() < 1e-10);
    assert!((csv.col("rP")[last] - 3f64.log2()).abs() < 1e-10);
}

#[test]
fn singlet_row() {
    let o = bounds(&["sweep", "--family", "werner", "--d", "2", "--from", "-1", "--to", "-1", "--step", "0.1"]);
    let csv = Csv::parse(&stdout(&o));
    assert_eq!(csv.rows.len(), 1);
    assert!((csv.col("I")[0] - 2.0).abs() < 1e-10);
    for c in ["B1", "B2", "rP", "deltaB", "deltaP", "ER", "EF"] {
        assert!((csv.col(c)[0] - 1.0).abs() < 1e-9, "{c}");
    }
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let args = ["sweep", "--family", "isotropic", "--d", "4", "--from", "-0.0666666666667", "--to", "1", "--step", "0.02"];
    let a = bounds_env(&args, "1");
    let b = bounds_env(&args, "4");
    let c = bounds(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let bad = bounds_env(&args, "zero");
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("BOUNDS_THREADS"));
}

#[test]
fn sweep_json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let o = bounds(&[
        "sweep", "--family", "werner", "--d", "2", "--from", "-1", "--to", "1", "--step", "0.5", "--format", "json",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["family"], "werner");
    assert_eq!(rows[0]["d"], 2);
    assert_eq!(rows[0]["B1"], 1.0);
    assert_eq!(rows[4]["param"], 1.0);
    let keys: Vec<&str> = HEADER.split(',').collect();
    for k in keys {
        assert!(rows[2].get(k).is_some(), "{k}");
    }
}

#[test]
fn sweep_column_subset() {
    let o = bounds(&[
        "sweep", "--family", "isotropic", "--d", "3", "--from", "0.5", "--to", "0.5", "--step", "1", "--columns",
        "param,EF,g_raw",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = Csv::parse(&stdout(&o));
    assert_eq!(csv.header, ["param", "EF", "g_raw"]);
    assert!(csv.col("EF")[0] <= csv.col("g_raw")[0] + 1e-12);
}

#[test]
fn sweep_validation_errors() {
    for args in [
        vec!["sweep", "--family", "werner", "--d", "3", "--from", "-1", "--to", "1", "--step", "0"],
        vec!["sweep", "--family", "werner", "--d", "3", "--from", "-2", "--to", "1", "--step", "0.1"],
        vec!["sweep", "--family", "werner", "--d", "3", "--from", "1", "--to", "-1", "--step", "0.1"],
        vec!["sweep", "--family", "ghz", "--d", "3", "--from", "0", "--to", "1", "--step", "0.1"],
        vec!["sweep", "--family", "werner", "--d", "3", "--from", "0", "--to", "1", "--step", "0.1", "--format", "xml"],
        vec!["sweep", "--family", "werner"],
        vec!["frobnicate"],
    ] {
        let o = bounds(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty());
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(bounds(&["--help"]).status.code(), Some(0));
    assert_eq!(bounds(&["--version"]).status.code(), Some(0));
    assert_eq!(bounds(&["sdp-check", "--help"]).status.code(), Some(0));
}

#[test]
fn figure_seven_deficit_matches_er() {
    let o = bounds(&["figure", "--id", "7"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = Csv::parse(&stdout(&o));
    assert_eq!(csv.header, ["family", "d", "param", "deltaB", "deltaP", "ER", "EF"]);
    assert_eq!(csv.rows.len(), 201);
    assert!(csv.col("d").iter().all(|d| *d == 5.0));
    for (b, e) in csv.col("deltaB").iter().zip(csv.col("ER")) {
        assert!((b - e).abs() < 1e-6, "{b} vs {e}");
    }
}

#[test]
fn figure_three_separable_range() {
    let csv = Csv::parse(&stdout(&bounds(&["figure", "--id", "3"])));
    let (lam, info, b2) = (csv.col("param"), csv.col("I"), csv.col("B2"));
    assert!((lam[0] + 0.125).abs() < 1e-12);
    let mut checked = 0;
    for i in 0..lam.len() {
        if lam[i] <= 0.25 {
            assert!((b2[i] - info[i]).abs() < 1e-9, "λ={}", lam[i]);
            checked += 1;
        }
    }
    assert!(checked > 40);
}

#[test]
fn figure_eight_has_raw_g() {
    let csv = Csv::parse(&stdout(&bounds(&["figure", "--id", "8", "--intervals", "50"])));
    assert!(csv.header.contains(&"g_raw".to_string()));
    for (g, ef) in csv.col("g_raw").iter().zip(csv.col("EF")) {
        assert!(ef <= g + 1e-9);
    }
}

#[test]
fn figure_curves_per_dimension() {
    for id in ["2", "4"] {
        let csv = Csv::parse(&stdout(&bounds(&["figure", "--id", id, "--intervals", "10"])));
        assert_eq!(csv.header, ["family", "d", "param", "B2", "rP"]);
        let d = csv.col("d");
        for dim in [3.0, 4.0, 5.0] {
            assert_eq!(d.iter().filter(|x| **x == dim).count(), 11);
        }
    }
    let csv = Csv::parse(&stdout(&bounds(&["figure", "--id", "1"])));
    assert_eq!(csv.header, ["family", "d", "param", "I", "B1", "B2", "rP"]);
}

#[test]
fn unknown_figure() {
    let o = bounds(&["figure", "--id", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("1, 2, 3, 4, 7, 8"));
}

fn field(text: &str, key: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(key)).unwrap();
    line.split_whitespace().nth(1).unwrap().parse().unwrap()
}

#[test]
fn sdp_check_examples() {
    let o = bounds(&["sdp-check", "--state", "singlet", "--rate", "1.0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("primal     1.000000"));
    assert!(text.contains("oracle     1.000000"));
    assert!(field(&text, "gap").abs() <= 1e-6);

    let o = bounds(&["sdp-check", "--state", "max_mixed", "--d", "2", "--K", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("primal     1.000000"));

    let o = bounds(&["sdp-check", "--state", "P00", "--rate", "2.0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("primal     1.000000"));
}

#[test]
fn sdp_check_json_and_mixed() {
    let o = bounds(&[
        "sdp-check", "--state", "isotropic", "--d", "3", "--param", "0.6", "--K", "3", "--mixed", "--ks", "2", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let primal = v["primal"].as_f64().unwrap();
    assert!(primal <= v["dual"].as_f64().unwrap() + 1e-6);
    assert!((primal - v["oracle"].as_f64().unwrap()).abs() < 1e-6);
    assert_eq!(v["certified"], true);
}

#[test]
fn sdp_check_errors() {
    // 25 > 16
    let o = bounds(&["sdp-check", "--state", "max_mixed", "--d", "5", "--K", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dimension"));
    // --rate and --K together, and neither
    assert_eq!(bounds(&["sdp-check", "--state", "singlet", "--rate", "1", "--K", "2"]).status.code(), Some(1));
    assert_eq!(bounds(&["sdp-check", "--state", "singlet"]).status.code(), Some(1));
    assert_eq!(bounds(&["sdp-check", "--state", "singlet", "--K", "2", "--mixed"]).status.code(), Some(1));
    // iteration cap too small to converge
    let o = bounds(&["sdp-check", "--state", "isotropic", "--d", "3", "--param", "0.3", "--K", "2.5", "--max-iter", "2"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stderr(&o).contains("did not converge"));
    assert!(stdout(&o).contains("certified  false"));
}

fn write_state(dir: &Path, name: &str, f: &StateFile) -> String {
    let path = dir.join(name);
    fs::write(&path, f.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn state_files() {
    let dir = tempfile::tempdir().unwrap();
    let singlet = StateFile::from_operator(&Werner.state(2, -1.0).unwrap(), BipartiteDims::square(2));
    let good = write_state(dir.path(), "singlet.json", &singlet);

    let o = bounds(&["report", "--file", &good]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["b1"], 1.0);
    assert_eq!(v["r_protocol"], 1.0);

    let o = bounds(&["sdp-check", "--file", &good, "--rate", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let mut scaled = singlet.clone();
    scaled.matrix_real.iter_mut().flatten().for_each(|x| *x *= 0.9);
    let o = bounds(&["report", "--file", &write_state(dir.path(), "trace.json", &scaled)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("trace"), "{}", stderr(&o));

    let mut asym = singlet.clone();
    asym.matrix_real[0][3] = 0.2;
    let o = bounds(&["report", "--file", &write_state(dir.path(), "asym.json", &asym)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Hermitian"), "{}", stderr(&o));

    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{\"dims\": [2, 2]}").unwrap();
    let o = bounds(&["report", "--file", junk.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("JSON"), "{}", stderr(&o));

    let o = bounds(&["report", "--file", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn report_named_states() {
    let o = bounds(&["report", "--state", "max_entangled", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["b2"].as_f64().unwrap() - 3f64.log2()).abs() < 1e-9);
    let o = bounds(&["report", "--state", "max_mixed", "--d", "2"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["info_content"], 0.0);
    assert_eq!(v["delta_b"], 0.0);
    assert_eq!(bounds(&["report", "--state", "werner"]).status.code(), Some(1));
    assert_eq!(bounds(&["report"]).status.code(), Some(1));
}
