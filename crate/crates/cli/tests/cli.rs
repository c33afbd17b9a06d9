use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use entropy_toolkit::frame::{ingleton_base, IngletonFrame};
use entropy_toolkit::polymatroid::matroid_rank;
use entropy_toolkit::GroundSet;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_entropy-toolkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value(o: &Output, key: &str) -> f64 {
    let text = stdout(o);
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"));
    line.parse().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = GroundSet::ijkl();
    let r3 = dir.path().join("r3.json");
    matroid_rank(&g, 3, 0).unwrap().write_json(&r3).unwrap();
    let o = run(&["check", path(&r3)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tight: true"));

    let rbar = dir.path().join("rbar.json");
    ingleton_base(&IngletonFrame::standard(&g).unwrap())
        .write_json(&rbar)
        .unwrap();
    let o = run(&["check", path(&rbar)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tight: true"));

    let text = fs::read_to_string(&r3).unwrap();
    let broken = dir.path().join("broken.json");
    fs::write(&broken, text.replacen("\"\": 0.0", "\"\": 0.5", 1)).unwrap();
    let o = run(&["check", path(&broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("must be 0"));

    let bumped = dir.path().join("bumped.json");
    fs::write(&bumped, text.replacen("\"i\": 1.0", "\"i\": 5.0", 1)).unwrap();
    let o = run(&["check", path(&bumped)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("polymatroid: false"));

    assert_eq!(run(&["check", "no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn fouratom_reports() {
    let o = run(&["fouratom", "--minimize"]);
    assert!(o.status.success());
    assert!((value(&o, "p_star") - 0.350457).abs() < 1e-4);
    assert!((value(&o, "score") - -0.089373).abs() < 1e-5);

    let o = run(&["fouratom", "--p", "0"]);
    assert_eq!(value(&o, "score_closed_form"), 1.0);
    let o = run(&["fouratom", "--p", "0.25"]);
    assert!(value(&o, "difference") < 1e-10);

    assert_eq!(run(&["fouratom", "--p", "0.6"]).status.code(), Some(2));
    assert_eq!(run(&["fouratom"]).status.code(), Some(2));
}

#[test]
fn exl_reports() {
    let o = run(&["exl", "--default"]);
    assert!(o.status.success());
    assert!((value(&o, "score_raw") - -0.078277).abs() < 1e-5);
    assert!(stdout(&o).contains("below_four_atom_minimum: true"));

    let o = run(&[
        "exl", "--p", "0.125", "--q", "0", "--r", "0", "--s", "0", "--t", "0",
    ]);
    assert!(o.status.success());
    assert!(value(&o, "closed_form_max_deviation") <= 1e-12);

    let o = run(&[
        "exl", "--p", "0.2", "--q", "0", "--r", "0", "--s", "0", "--t", "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["exl", "--p", "0.125"]).status.code(), Some(2));
}

#[test]
fn outer_and_hull() {
    let o = run(&["outer", "--dfz-max-s", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("vertex: [0.6666666667, 0.3333333333, 0, 0]"));

    let dir = tempfile::tempdir().unwrap();
    let tet = dir.path().join("tet.csv");
    assert!(run(&["export", "tetrahedron", "--out", path(&tet)])
        .status
        .success());
    let obj = dir.path().join("tet.obj");
    let o = run(&["hull", path(&tet), "--out", path(&obj)]);
    assert!(o.status.success());
    assert_eq!(value(&o, "vertices"), 4.0);
    assert_eq!(value(&o, "facets"), 4.0);
    let text = fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 4);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 4);

    let bank = dir.path().join("bank.json");
    assert!(
        run(&["export", "dfz-bank", "--max-s", "10", "--out", path(&bank)])
            .status
            .success()
    );
    let o = run(&["outer", "--ineq-file", path(&bank)]);
    assert!((value(&o, "max_alpha_on_alpha_beta_edge") - 2.0 / 1025.0).abs() < 1e-9);
}

#[test]
fn entropy_and_score() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.csv");
    fs::write(&d, "x_a,x_b,x_c,x_d,prob\n0,0,0,0,0.5\n1,1,1,1,0.5\n").unwrap();
    let o = run(&["entropy", path(&d), "--bits"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"abcd\": 1.0"));
    let h = dir.path().join("h.json");
    assert!(run(&["entropy", path(&d), "--out", path(&h)])
        .status
        .success());
    let o = run(&["score", path(&h), "--frame", "c,d,a,b"]);
    assert!(stdout(&o).contains("frame: c,d,a,b"));
    assert_eq!(
        run(&["score", path(&h), "--frame", "a,a,b,c"])
            .status
            .code(),
        Some(2)
    );
}

fn search_config(dir: &Path) -> String {
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{"alphabet_sizes":[2,2,2,2],"restarts":8,"budget_evals":300,"master_seed":17,"objective":"pipeline_score"}"#,
    )
    .unwrap();
    path(&cfg).to_string()
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = search_config(dir.path());
    let outputs: Vec<(Vec<u8>, Vec<u8>, Vec<u8>)> = ["1", "4"]
        .iter()
        .flat_map(|threads| [threads, threads])
        .enumerate()
        .map(|(k, threads)| {
            let res = dir.path().join(format!("res{k}.json"));
            let pts = dir.path().join(format!("pts{k}.csv"));
            let m = bin()
                .env("ENTROPY_TOOLKIT_THREADS", threads)
                .args(["minimize", &cfg, "--out", path(&res)])
                .output()
                .unwrap();
            assert!(m.status.success());
            let c = bin()
                .env("ENTROPY_TOOLKIT_THREADS", threads)
                .args([
                    "cloud",
                    &cfg,
                    "--directions",
                    "3",
                    "--seed",
                    "2",
                    "--out",
                    path(&pts),
                ])
                .output()
                .unwrap();
            assert!(c.status.success());
            let mut out = m.stdout;
            out.extend(c.stdout);
            (out, fs::read(&res).unwrap(), fs::read(&pts).unwrap())
        })
        .collect();
    for o in &outputs[1..] {
        assert_eq!(o, &outputs[0]);
    }
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = bin()
        .env("ENTROPY_TOOLKIT_THREADS", "zero")
        .args(["fouratom", "--p", "0.1"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn optima_only_cloud_is_small() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = search_config(dir.path());
    let pts = dir.path().join("pts.csv");
    let o = run(&[
        "cloud",
        &cfg,
        "--directions",
        "2",
        "--optima-only",
        "--out",
        path(&pts),
    ]);
    assert!(o.status.success());
    assert!(value(&o, "points") <= 16.0);
    let text = fs::read_to_string(&pts).unwrap();
    assert!(text.starts_with("alpha,beta,gamma,delta,source"));
    assert!(text.lines().skip(1).all(|l| l.contains("opt d")));
}

#[test]
fn exports() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.csv");
    assert!(run(&[
        "export",
        "four-atom-curve",
        "--points",
        "3",
        "--out",
        path(&curve)
    ])
    .status
    .success());
    assert_eq!(
        fs::read_to_string(&curve).unwrap(),
        "p,score\n0,1\n0.25,-0.06127812445913289\n0.5,0\n"
    );
    let ex = dir.path().join("ex.csv");
    assert!(run(&["export", "examples", "--out", path(&ex)])
        .status
        .success());
    assert_eq!(fs::read_to_string(&ex).unwrap().lines().count(), 3);
    let gens = dir.path().join("gens.json");
    assert!(run(&["export", "generators", "--out", path(&gens)])
        .status
        .success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&gens).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 11);
}
