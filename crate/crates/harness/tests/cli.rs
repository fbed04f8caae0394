use std::path::Path;
use std::process::{Command, Output};

fn cutpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutpath")).args(args).env("CUTPATH_THREADS", "2").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data_rows(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path).unwrap().lines().filter(|l| !l.starts_with('#')).map(String::from).collect()
}

#[test]
fn help_and_usage_errors() {
    let o = cutpath(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["generate", "walk", "resist", "bounds", "experiment"] {
        assert!(stdout(&o).contains(sub));
    }
    let o = cutpath(&["walk", "--help"]);
    assert!(stdout(&o).contains("--save-traces"));

    let o = cutpath(&["resist", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(cutpath(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn generate_then_resist_on_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("p6.ug");
    let o = cutpath(&["generate", "--family", "path", "--n", "6", "--out", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let meta = std::fs::read_to_string(dir.path().join("p6.ug.meta")).unwrap();
    assert!(meta.contains("family = path"));

    let o = cutpath(&["resist", "--graph", g.to_str().unwrap(), "--source", "0", "--sink", "5"]);
    assert_eq!(o.status.code(), Some(0));
    // five unit resistors in series; the sink's neighbour sits at 1/5
    assert_eq!(stdout(&o), "C_eff = 0.2\nR_eff = 5\ns = 0.2\n");

    let o = cutpath(&["resist", "--graph", g.to_str().unwrap(), "--source", "0", "--sink", "9"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cutpath(&["resist", "--graph", dir.path().join("missing.ug").to_str().unwrap(), "--source", "0", "--sink", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn layered_walks_with_saved_traces() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("lay.ug");
    let o = cutpath(&["generate", "--family", "layered", "--j-max", "12", "--seed", "4", "--out", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let meta = std::fs::read_to_string(dir.path().join("lay.ug.meta")).unwrap();
    assert!(meta.contains("jmax = 12") && meta.contains("j0 = "));

    let prefix = dir.path().join("w");
    let args = [
        "walk", "--graph", g.to_str().unwrap(), "--start", "0", "--stop", "layer:12", "--seed", "3", "--replicas", "3",
        "--window", "0.1", "--save-traces", "--out", prefix.to_str().unwrap(),
    ];
    let o = cutpath(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = data_rows(&dir.path().join("w.csv"));
    assert_eq!(rows[0], "replica,steps,stop_reason,n_cut_times,n_cutpoints");
    assert_eq!(rows.len(), 4);
    for (r, row) in rows[1..].iter().enumerate() {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[2], "hit_layer");
        let steps: u64 = f[1].parse().unwrap();
        let bin = std::fs::read(dir.path().join(format!("w_{r}.bin"))).unwrap();
        assert_eq!(bin.len() as u64, 4 * (steps + 1));
        assert_eq!(&bin[..4], &0u32.to_le_bytes());
    }
    // same seed, same bytes
    let first = std::fs::read(dir.path().join("w.csv")).unwrap();
    assert_eq!(cutpath(&args).status.code(), Some(0));
    assert_eq!(std::fs::read(dir.path().join("w.csv")).unwrap(), first);

    let o = cutpath(&["walk", "--graph", g.to_str().unwrap(), "--stop", "sideways", "--out", prefix.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn experiment_with_config_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    std::fs::write(&cfg, "[experiment]\nid = E6\n\n[oracle]\n# the short sweep\na = 20\nt_max = 10\n").unwrap();
    let out = dir.path().join("out");
    let o = cutpath(&[
        "experiment", "run", "E6", "--config", cfg.to_str().unwrap(), "--seed", "7", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out.join("e6_sweep.csv")).unwrap();
    assert!(text.starts_with("# experiment.id = E6\n# experiment.seed = 7\n"));
    let rows = data_rows(&out.join("e6_sweep.csv"));
    assert_eq!(rows[0], "kind,a,t_or_m,exact,bound,satisfied");
    assert!(rows.contains(&"hit_time,20,10,0,0.018159971905,true".to_string()));
    let summary = std::fs::read_to_string(out.join("summary.txt")).unwrap();
    assert!(summary.contains("runtime:") && summary.contains("PASS"));
    // runtime lives only in the summary
    assert!(!text.contains("runtime"));
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("key", "[oracle]\nmystery = 1\n"),
        ("section", "[plots]\ncolour = red\n"),
        ("bare", "seed = 3\n"),
        ("dup", "[oracle]\nt_max = 5\nt_max = 6\n"),
        ("range", "[walk]\nbeta = 1.5\n"),
        ("id", "[experiment]\nid = E3\n"),
    ] {
        let cfg = dir.path().join(format!("{name}.cfg"));
        std::fs::write(&cfg, body).unwrap();
        let o = cutpath(&["experiment", "run", "E6", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(cutpath(&["experiment", "run", "E9"]).status.code(), Some(1));
}

#[test]
fn trace_network_smoke_on_three_vertex_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("p3.cfg");
    std::fs::write(&cfg, "[graph]\nfamily = path\nn = 3\n\n[experiment]\nreplicas = 400\n\n[walk]\nedge_walks = 0\n").unwrap();
    let out = dir.path().join("out");
    let o = cutpath(&["experiment", "run", "E4", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = data_rows(&out.join("e4_edges.csv"));
    let exact: Vec<&str> = rows[1..].iter().map(|r| r.split(',').nth(3).unwrap()).collect();
    assert_eq!(exact, vec!["3", "1"]);
    let bounds = data_rows(&out.join("e4_bounds.csv"));
    let concavity = bounds.iter().find(|r| r.starts_with("concavity")).unwrap();
    assert!(concavity.ends_with("true"), "{concavity}");
}

#[test]
fn bounds_subcommand_writes_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b");
    let o = cutpath(&["bounds", "--a", "8,16", "--t-max", "100", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(data_rows(&out.join("e6_sweep.csv")).len(), 1 + 2 * 101 + 81 + 161);
}
