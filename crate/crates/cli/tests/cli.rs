use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/mini_region").join(name)
}

fn bnp(args: &[&str], config: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnp"))
        .args(args)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap().flatten() {
            let path = entry.path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

/// Writes a config next to nothing but pointing at fixture files.
fn config_with(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("config.ini");
    let mut text = format!(
        "[general]\nnodes = {}\nedges = {}\n",
        fixture("nodes.geojson").display(),
        fixture("edges.geojson").display()
    );
    text.push_str(body);
    std::fs::write(&path, text).unwrap();
    path
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn all_matches_individual_steps() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let config = fixture("config.ini");
    let all = bnp(&["all", "-q"], &config, a.path());
    assert!(all.status.success(), "{}", stderr(&all));
    for step in ["validate", "show", "access", "slope", "components", "edges", "loops", "summary", "export"] {
        let o = bnp(&[step, "-q"], &config, b.path());
        assert!(o.status.success(), "{step}: {}", stderr(&o));
    }
    let (ta, tb) = (tree(a.path()), tree(b.path()));
    assert_eq!(ta.keys().collect::<Vec<_>>(), tb.keys().collect::<Vec<_>>());
    for (k, v) in &ta {
        assert!(tb[k] == *v, "{k} differs between `all` and individual steps");
    }
}

#[test]
fn reruns_and_thread_counts_are_byte_identical() {
    let config = fixture("config.ini");
    let runs: Vec<_> = ["1", "4", "0"]
        .iter()
        .map(|threads| {
            let out = tempfile::tempdir().unwrap();
            let o = Command::new(env!("CARGO_BIN_EXE_bnp"))
                .args(["all", "-q", "--config"])
                .arg(&config)
                .arg("--out")
                .arg(out.path())
                .env("BNP_THREADS", threads)
                .output()
                .unwrap();
            assert!(o.status.success());
            tree(out.path())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn validate_network_only_warns_but_passes() {
    let dir = tempfile::tempdir().unwrap();
    let config = config_with(dir.path(), "");
    let o = bnp(&["validate"], &config, &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = String::from_utf8_lossy(&o.stdout);
    assert!(report.contains("no point layers"), "{report}");
    assert!(report.contains("no elevation grid"), "{report}");
    assert!(report.contains("result: PASS"));
}

#[test]
fn explicit_step_without_input_fails() {
    let dir = tempfile::tempdir().unwrap();
    let config = config_with(dir.path(), "");
    let out = dir.path().join("out");
    let o = bnp(&["slope"], &config, &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("elevation"), "{}", stderr(&o));
    let o = bnp(&["access"], &config, &out);
    assert_eq!(o.status.code(), Some(1));
    // `all` skips the same steps with a note and leaves no slope file
    let o = bnp(&["all"], &config, &out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("skipped"));
    assert!(!out.join("layers/edges_slope.geojson").exists());
    assert!(out.join("stats/summary.json").exists());
    assert!(out.join("maps/edges.svg").exists());
}

#[test]
fn config_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = bnp(&["edges"], &dir.path().join("missing.ini"), &out);
    assert_eq!(o.status.code(), Some(3));
    let bad = dir.path().join("bad.ini");
    std::fs::write(&bad, "[edges]\ntoo_short_km = 6\nideal_max_km = 5\n").unwrap();
    let o = bnp(&["edges"], &bad, &out);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn io_and_parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let missing = dir.path().join("a.ini");
    std::fs::write(&missing, "[general]\nnodes = nowhere.geojson\n").unwrap();
    assert_eq!(bnp(&["edges"], &missing, &out).status.code(), Some(2));

    let broken = dir.path().join("broken.geojson");
    std::fs::write(&broken, "{\"type\": \"FeatureCollection\", \"features\": [").unwrap();
    let config = config_with(dir.path(), &format!("[point_layers]\nfacilities = {}\n", broken.display()));
    assert_eq!(bnp(&["access"], &config, &out).status.code(), Some(2));

    let dem = dir.path().join("dem.asc");
    std::fs::write(&dem, "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 10\n1 2\n3\n").unwrap();
    let config = config_with(dir.path(), &format!("elevation = {}\n", dem.display()));
    assert_eq!(bnp(&["slope"], &config, &out).status.code(), Some(2));
}

#[test]
fn invalid_network_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let nodes = dir.path().join("nodes.geojson");
    let edges = dir.path().join("edges.geojson");
    std::fs::write(
        &nodes,
        r#"{"type":"FeatureCollection","features":[
            {"type":"Feature","properties":{"node_id":1},"geometry":{"type":"Point","coordinates":[0,0]}}]}"#,
    )
    .unwrap();
    std::fs::write(
        &edges,
        r#"{"type":"FeatureCollection","features":[
            {"type":"Feature","properties":{"edge_id":1},"geometry":{"type":"LineString","coordinates":[[0,0],[900,0]]}}]}"#,
    )
    .unwrap();
    let config = dir.path().join("config.ini");
    std::fs::write(&config, "").unwrap();
    let out = dir.path().join("out");
    let o = bnp(&["validate"], &config, &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("result: FAIL"));
    assert_eq!(bnp(&["edges"], &config, &out).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_64() {
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_bnp")).args(args).output().unwrap();
    assert_eq!(run(&[]).status.code(), Some(64));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(run(&["edges", "--bogus"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_dir_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = config_with(dir.path(), "output_dir = results\n");
    let o = Command::new(env!("CARGO_BIN_EXE_bnp"))
        .args(["edges", "-q", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("results/layers/edges_classified.geojson").exists());
}

#[test]
fn quiet_suppresses_progress() {
    let dir = tempfile::tempdir().unwrap();
    let config = config_with(dir.path(), "");
    let loud = bnp(&["edges"], &config, dir.path());
    let quiet = bnp(&["edges", "--quiet"], &config, dir.path());
    assert!(!stderr(&loud).is_empty());
    assert!(stderr(&quiet).is_empty());
}
