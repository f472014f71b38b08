use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_spectral-tda"));
    c.env_remove("SPECTRAL_TDA_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(out.status.success(), "{args:?}\n{}", String::from_utf8_lossy(&out.stderr));
    out
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const TWO_GROUP_CONFIG: &str = r#"
sampling_rate = 100.0
samples = 2048
seed = 7
max_dim = 2
write_panels = true

[[groups]]
name = "cyclic"
preset = "3-cyclic"
subjects = 20
noise = 0.5

[[groups]]
name = "random"
preset = "3-random"
subjects = 20
noise = 0.5

[[bands]]
name = "alpha"
low = 8.0
high = 12.0

[test]
permutations = 999
seed = 3
"#;

fn write_config(dir: &Path, body: &str, out: &str) -> PathBuf {
    let path = dir.join("run.toml");
    fs::write(&path, format!("output_dir = \"{out}\"\n{body}")).unwrap();
    path
}

#[test]
fn simulated_panel_survives_a_coherence_round_trip() {
    let dir = TempDir::new().unwrap();
    let panel = dir.path().join("p.csv");
    ok(&["simulate", "--preset", "1", "--samples", "1024", "--seed", "4", "--out", s(&panel)]);
    let sidecar = json(&panel.with_extension("json"));
    assert_eq!(sidecar["preset"], "1");
    let text = fs::read_to_string(&panel).unwrap();
    assert_eq!(text.lines().count(), 1025);
    assert_eq!(text.lines().next().unwrap().split(',').count(), 9);

    let out = dir.path().join("coh");
    ok(&["coherence", "--input", s(&panel), "--band", "8:12", "--out-dir", s(&out)]);
    let d = fs::read_to_string(out.join("distance.csv")).unwrap();
    assert_eq!(d.lines().count(), 10);
    let diagram = dir.path().join("d.json");
    let betti = dir.path().join("b.csv");
    ok(&[
        "persist",
        "--distance",
        s(&out.join("distance.csv")),
        "--out",
        s(&diagram),
        "--betti",
        s(&betti),
    ]);
    assert!(fs::read_to_string(&betti).unwrap().starts_with("dim,epsilon,betti"));
    let land = dir.path().join("l.json");
    let grid = dir.path().join("l.csv");
    ok(&[
        "landscape",
        "--diagram",
        s(&diagram),
        "--dim",
        "1",
        "--out",
        s(&land),
        "--grid-csv",
        s(&grid),
        "--grid",
        "0:1:101",
    ]);
    assert_eq!(fs::read_to_string(&grid).unwrap().lines().count(), 102);
}

#[test]
fn empty_input_is_a_data_error_naming_the_file() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    let out = run(&["coherence", "--input", s(&empty), "--band", "8:12", "--out-dir", s(dir.path())]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("empty.csv"), "{err}");
}

#[test]
fn non_finite_values_are_reported_with_their_position() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.csv");
    let mut text = String::from("a,b\n");
    for t in 0..64 {
        text.push_str(&format!(
            "{},{}\n",
            t as f64 * 0.1,
            if t == 5 { "NaN".into() } else { (t as f64).sin().to_string() }
        ));
    }
    fs::write(&bad, text).unwrap();
    let out = run(&["coherence", "--input", s(&bad), "--band", "8:12", "--out-dir", s(dir.path())]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("bad.csv") && err.contains("column 'b'") && err.contains("row 6"),
        "{err}"
    );
}

#[test]
fn bad_arguments_are_config_errors() {
    let dir = TempDir::new().unwrap();
    let panel = dir.path().join("p.csv");
    ok(&["simulate", "--preset", "3-cyclic", "--samples", "256", "--out", s(&panel)]);
    let out = run(&["coherence", "--input", s(&panel), "--band", "12:8", "--out-dir", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(run(&["pipeline", "--config", s(&cfg)]).status.code(), Some(2));
}

#[test]
fn pipeline_runs_are_byte_identical_and_stages_compose() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), TWO_GROUP_CONFIG, "first");
    let out = ok(&["pipeline", "--config", s(&cfg)]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("alpha H1"), "{stdout}");
    let first = fs::read(dir.path().join("first/manifest.json")).unwrap();
    ok(&["pipeline", "--config", s(&cfg)]);
    assert_eq!(first, fs::read(dir.path().join("first/manifest.json")).unwrap());

    let report = json(&dir.path().join("first/alpha/test_h1.json"));
    assert!(report["p_value"].as_f64().unwrap() < 0.05, "{report}");
    assert_eq!(report["group_sizes"], serde_json::json!([20, 20]));

    // rebuild the H1 test from the written panels, one stage at a time
    let stages = dir.path().join("stages");
    let mut groups: Vec<Vec<String>> = vec![Vec::new(), Vec::new()];
    for (g, name) in ["cyclic", "random"].iter().enumerate() {
        for i in 1..=20 {
            let id = format!("s{i:03}");
            let panel = dir.path().join(format!("first/panels/{name}/{id}.csv"));
            let sub = stages.join(name).join(&id);
            ok(&["coherence", "--input", s(&panel), "--band", "8:12", "--out-dir", s(&sub)]);
            assert_eq!(
                fs::read(sub.join("distance.csv")).unwrap(),
                fs::read(dir.path().join(format!("first/alpha/{name}/{id}/distance.csv"))).unwrap()
            );
            ok(&[
                "persist",
                "--distance",
                s(&sub.join("distance.csv")),
                "--out",
                s(&sub.join("diagram.json")),
            ]);
            ok(&[
                "landscape",
                "--diagram",
                s(&sub.join("diagram.json")),
                "--dim",
                "1",
                "--out",
                s(&sub.join("l.json")),
            ]);
            groups[g].push(sub.join("l.json").to_str().unwrap().to_string());
        }
    }
    let test_out = stages.join("test_h1.json");
    let mut args = vec!["test", "--band", "alpha", "--seed", "3", "--out", s(&test_out), "--group1"];
    args.extend(groups[0].iter().map(String::as_str));
    args.push("--group2");
    args.extend(groups[1].iter().map(String::as_str));
    ok(&args);
    assert_eq!(
        fs::read(&test_out).unwrap(),
        fs::read(dir.path().join("first/alpha/test_h1.json")).unwrap()
    );
}

#[test]
fn two_cycle_preset_shows_two_prominent_loops() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "samples = 2048\nseed = 1\n[[groups]]\nname = \"two-cycles\"\npreset = \"1\"\nsubjects = 20\nnoise = 1.0\n\
         [[bands]]\nname = \"alpha\"\nlow = 8.0\nhigh = 12.0\n",
        "out",
    );
    ok(&["pipeline", "--config", s(&cfg)]);
    let manifest = json(&dir.path().join("out/manifest.json"));
    let diagrams: Vec<&str> = manifest["artifacts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["path"].as_str().unwrap())
        .filter(|p| p.ends_with("diagram.json"))
        .collect();
    assert_eq!(diagrams.len(), 20);
    for path in diagrams {
        let doc = json(&dir.path().join("out").join(path));
        let mut bars: Vec<f64> = doc["dims"]["1"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p[1].as_f64().unwrap() - p[0].as_f64().unwrap())
            .collect();
        bars.sort_by(|a, b| b.total_cmp(a));
        assert!(bars.len() >= 2, "{path}: {bars:?}");
        // median of the bars other than the two loops, zero if there are none
        let rest = &bars[2..];
        let median = match rest.len() {
            0 => 0.0,
            n if n % 2 == 1 => rest[n / 2],
            n => 0.5 * (rest[n / 2 - 1] + rest[n / 2]),
        };
        assert!(bars[1] >= 3.0 * median, "{path}: {bars:?}");
    }
}
