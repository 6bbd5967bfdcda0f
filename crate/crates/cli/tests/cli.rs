use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn lmstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmstat")).args(args).output().expect("spawn lmstat")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
    let mut rows = vec![rd.headers().unwrap().iter().map(String::from).collect()];
    rows.extend(rd.records().map(|r| r.unwrap().iter().map(String::from).collect()));
    rows
}

fn write_samples(dir: &Path, name: &str, lo: f64, hi: f64, f: impl Fn(f64) -> [f64; 6]) -> PathBuf {
    let n = 41;
    let mut text = String::from("s,g1,g2,g3,w1,w2,w3\n");
    for i in 0..n {
        let s = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let v = f(s);
        text.push_str(&format!("{s},{},{},{},{},{},{}\n", v[0], v[1], v[2], v[3], v[4], v[5]));
    }
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_exit_codes() {
    let ok = lmstat(&["verify", "pr1-3a", "--n", "2", "--r", "1", "--alpha", "2"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    let v = json(&ok);
    assert_eq!(v["verdict"], "pass");
    assert!(v["report"]["max_residual"].as_f64().unwrap() <= 1e-8);

    let wrong = lmstat(&["verify", "pr1-3a", "--alpha", "3"]);
    assert_eq!(code(&wrong), 1);
    assert_eq!(json(&wrong)["verdict"], "fail");

    let unknown = lmstat(&["verify", "nosuchfamily"]);
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("nosuchfamily"));
}

#[test]
fn verify_rejects_bad_flags() {
    assert_eq!(code(&lmstat(&["verify", "pr1-3a", "--grid", "8"])), 2);
    assert_eq!(code(&lmstat(&["verify", "pr1-3a", "--tol", "-1"])), 2);
    assert_eq!(code(&lmstat(&["verify", "pr1-3a", "--param", "oops"])), 2);
}

#[test]
fn verify_csv_has_one_row() {
    let o = lmstat(&["verify", "pr1-3a?n=2&r=1", "--grid", "8,8", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "family");
    let verdict = rows[0].iter().position(|h| h == "verdict").unwrap();
    assert_eq!(rows[1][verdict], "pass");
}

#[test]
fn envelope_matches_schema_required_keys() {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).expect("schema parses");
    let v = json(&lmstat(&["verify", "pr1-3a", "--grid", "6,6"]));
    for key in schema["required"].as_array().unwrap() {
        assert!(v.get(key.as_str().unwrap()).is_some(), "missing {key}");
    }
    assert_eq!(v["schema_version"], schema["properties"]["schema_version"]["const"]);
    for key in schema["$defs"]["residual_report"]["required"].as_array().unwrap() {
        assert!(v["report"].get(key.as_str().unwrap()).is_some(), "report missing {key}");
    }
}

#[test]
fn invert_plane_gives_both_sheets() {
    let o = lmstat(&["invert", "plane-x3", "--c", "0.5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let comps = v["report"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    let mut alphas: Vec<f64> = comps.iter().map(|c| c["fitted_alpha_phi_mean"].as_f64().unwrap()).collect();
    alphas.sort_by(f64::total_cmp);
    assert!((alphas[0] + 4.0).abs() < 1e-6 && (alphas[1] - 4.0).abs() < 1e-6, "{alphas:?}");
}

#[test]
fn branch_case_a_obstruction() {
    let o = lmstat(&["branch", "--mu", "1", "--k", "1", "--c", "1,0,0,0"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let obs = v["report"]["branch"]["obstruction"].as_array().unwrap();
    assert!((obs[0].as_f64().unwrap() + 1.0).abs() < 1e-6, "{obs:?}");
    assert_eq!(code(&lmstat(&["branch", "--mu", "1", "--k", "1", "--c", "1,0"])), 2);
}

#[test]
fn branch_sweep_is_reproducible() {
    let args = ["branch", "--mu", "1", "--k", "0.3", "--c", "1,0,0,0", "--sweep", "20", "--seed", "7"];
    let a = json(&lmstat(&args));
    let b = json(&lmstat(&args));
    assert_eq!(a["report"]["sweep"], b["report"]["sweep"]);
    assert_eq!(a["verdict"], "pass");
}

#[test]
fn mesh_writes_obj_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("thli1.obj");
    let o = lmstat(&["mesh", "thli-1", "--s", "0:1:64", "--t", "-2:2:32", "-o", obj.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&obj).unwrap();
    let verts: Vec<[f64; 3]> = text
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| {
            let x: Vec<f64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            [x[0], x[1], x[2]]
        })
        .collect();
    assert_eq!(verts.len(), 64 * 32);
    for x in &verts {
        assert!((x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - 1.0).abs() < 1e-9, "{x:?}");
    }
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 2 * 63 * 31);
    let side = std::fs::read_to_string(obj.with_extension("csv")).unwrap();
    assert_eq!(side.lines().count(), 64 * 32 + 1);
    assert!(side.starts_with("vertex,s,t,x1,x2,x3,xx,mean_curvature,fitted_alpha,valid"));
}

#[test]
fn mesh_needs_out_and_a_surface() {
    assert_eq!(code(&lmstat(&["mesh", "thli-1"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("h3.obj");
    assert_eq!(code(&lmstat(&["mesh", "pr1-3a?n=3", "-o", obj.to_str().unwrap()])), 2);
}

#[test]
fn classify_sampled_surfaces() {
    let dir = tempfile::tempdir().unwrap();
    let ex2 = write_samples(dir.path(), "ex2.csv", 0.9, 1.5, |s| {
        [s.sin(), -s.cos(), (s / 2.0).tan(), s.cos(), s.sin(), 1.0]
    });
    let o = lmstat(&["classify", ex2.to_str().unwrap(), "--t=-2:0"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["report"]["ruling_class"], "LightlikeW");
    assert_eq!(v["report"]["verdict"]["kind"], "stationary");
    let alpha = v["report"]["verdict"]["alpha"].as_f64();
    assert!(alpha.is_some_and(|a| (a - 4.0).abs() < 1e-3), "{}", v["report"]["verdict"]);

    let heli = write_samples(dir.path(), "heli.csv", 0.0, 1.0, |s| [-s.sin(), s.cos(), s, s.cos(), s.sin(), 0.0]);
    let o = lmstat(&["classify", heli.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows[1][0], "NonLightlikeW_NonLightlikeWp");
    assert_eq!(rows[1][2], "not_stationary");

    let cyl = write_samples(dir.path(), "cyl.csv", 0.0, 1.0, |s| [s.cos(), s.sin(), 0.0, 0.0, 0.0, 1.0]);
    let rows = csv_rows(&lmstat(&["classify", cyl.to_str().unwrap(), "--format", "csv"]));
    assert_eq!(rows[1][0], "Cylindrical");
    assert_eq!(rows[1][2], "not_stationary");
}

#[test]
fn classify_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let short = dir.path().join("short.csv");
    std::fs::write(&short, "s,g1,g2,g3,w1,w2,w3\n0,1,0,0,0,0,1\n1,1,0,0,0,0,1\n").unwrap();
    assert_eq!(code(&lmstat(&["classify", short.to_str().unwrap()])), 2);
    let header = dir.path().join("header.csv");
    std::fs::write(&header, "s,x,y\n1,2,3\n").unwrap();
    assert_eq!(code(&lmstat(&["classify", header.to_str().unwrap()])), 2);
    let order = write_samples(dir.path(), "order.csv", 1.0, 0.0, |s| [s.cos(), s.sin(), 0.0, 0.0, 0.0, 1.0]);
    assert_eq!(code(&lmstat(&["classify", order.to_str().unwrap()])), 2);
    assert_eq!(code(&lmstat(&["classify", "/nonexistent/input.csv"])), 2);
}

#[test]
fn witness_leads_and_half_k() {
    let o = lmstat(&["witness"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["report"]["measured_vs_recomputed"].as_f64().unwrap() < 1e-6);
    // at k = 1/2 the leads vanish and a non-planar stationary chart exists
    let o = lmstat(&["witness", "--k", "0.5", "--b=-0.5"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn max_principle_and_catalog_scan() {
    let o = lmstat(&["max-principle", "--delta", "0.1,0.5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["report"]["violations"], 0);
    let o = lmstat(&["scan-catalog", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&o);
    let col = rows[0].iter().position(|h| h == "as_expected").unwrap();
    assert!(rows[1..].iter().all(|r| r[col] == "true"));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("lmstat.toml");
    std::fs::write(&cfg, "alpha = 3.0\ngrid = [6, 6]\nformat = \"csv\"\n").unwrap();
    let o = lmstat(&["--config", cfg.to_str().unwrap(), "verify", "pr1-3a"]);
    assert_eq!(code(&o), 1);
    let rows = csv_rows(&o);
    assert_eq!(rows[1][1], "3e0");
    assert_eq!(rows[1][2], "6x6");
    std::fs::write(&cfg, "colour = \"red\"\n").unwrap();
    assert_eq!(code(&lmstat(&["--config", cfg.to_str().unwrap(), "verify", "pr1-3a"])), 2);
}

#[test]
fn out_file_is_written_whole() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = lmstat(&["verify", "pr1-3a", "--grid", "6,6", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["command"], "verify");
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1, "temporary files left behind");
}
