use std::fs;
use std::process::{Command, Output};

fn skorokhod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skorokhod"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn family_then_self_distance_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let a = a.to_str().unwrap();
    assert!(
        skorokhod(&["family", "--name", "m1_staircase", "--n", "20", "--out", a])
            .status
            .success()
    );
    for metric in ["uniform", "j1", "j1_log", "m1"] {
        let o = skorokhod(&["dist", "--metric", metric, "--left", a, "--right", a]);
        assert!(o.status.success(), "{metric}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["value"], 0.0);
        assert_eq!(v["schema_version"], 1);
    }
}

#[test]
fn oracle_cross_check_passes_on_small_paths() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    fs::write(
        &a,
        r#"{"horizon":1.0,"kind":"step","times":[0.0,0.3,0.6],"values":[0.0,1.0,-1.0]}"#,
    )
    .unwrap();
    fs::write(
        &b,
        r#"{"horizon":1.0,"kind":"step","times":[0.0,0.35,0.5],"values":[0.0,1.5,-1.0]}"#,
    )
    .unwrap();
    for metric in ["j1", "j1_log", "m1"] {
        let o = skorokhod(&[
            "dist",
            "--metric",
            metric,
            "--left",
            a.to_str().unwrap(),
            "--right",
            b.to_str().unwrap(),
            "--oracle",
        ]);
        assert!(
            o.status.success(),
            "{metric}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn validation_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"horizon":1.0,"kind":"step","times":[0.5],"values":[1.0]}"#,
    )
    .unwrap();
    let two = dir.path().join("two.json");
    fs::write(
        &two,
        r#"{"horizon":2.0,"kind":"step","times":[0.0],"values":[1.0]}"#,
    )
    .unwrap();
    let one = dir.path().join("one.json");
    fs::write(
        &one,
        r#"{"horizon":1.0,"kind":"step","times":[0.0],"values":[1.0]}"#,
    )
    .unwrap();
    let p = |x: &std::path::Path| x.to_str().unwrap().to_string();
    let cases: Vec<Vec<String>> = vec![
        vec![
            "dist".into(),
            "--metric".into(),
            "j1".into(),
            "--left".into(),
            p(&bad),
            "--right".into(),
            p(&one),
        ],
        vec![
            "dist".into(),
            "--metric".into(),
            "j1".into(),
            "--left".into(),
            p(&two),
            "--right".into(),
            p(&one),
        ],
        vec![
            "dist".into(),
            "--metric".into(),
            "j9".into(),
            "--left".into(),
            p(&one),
            "--right".into(),
            p(&one),
        ],
        vec![
            "family".into(),
            "--name".into(),
            "j1_shift".into(),
            "--n".into(),
            "2".into(),
        ],
        vec![
            "modulus".into(),
            "--kind".into(),
            "omegaprime".into(),
            "--path".into(),
            p(&one),
            "--deltas".into(),
            "1.5".into(),
        ],
        vec!["dist".into(), "--bogus".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = skorokhod(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn modulus_ladder_csv() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    let f = f.to_str().unwrap();
    assert!(
        skorokhod(&["family", "--name", "spike", "--n", "20", "--out", f])
            .status
            .success()
    );
    let o = skorokhod(&[
        "modulus",
        "--kind",
        "omegadoubleprime",
        "--path",
        f,
        "--deltas",
        "0.2,0.1,0.05",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("kind,delta,value\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",1")));
}

#[test]
fn incompleteness_demo() {
    let o = skorokhod(&["demo", "--name", "incompleteness", "--max-n", "12"]);
    let text = stdout(&o);
    assert!(text.starts_with("n,d_j1_next,d_j1_log_next,d_j1_null\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 12);
    for r in rows {
        assert!((r[1] - 2f64.powi(-(r[0] as i32 + 1))).abs() < 1e-12);
        assert!((r[2] - 2f64.ln()).abs() < 1e-9);
        assert_eq!(r[3], 1.0);
    }
}

#[test]
fn m1_vs_j1_demo() {
    let rows = csv_rows(&stdout(&skorokhod(&[
        "demo",
        "--name",
        "m1_vs_j1",
        "--ns",
        "5,10,20,40",
    ])));
    for r in &rows {
        assert!((r[1] - 0.5).abs() < 1e-6);
        assert!(r[2] <= 1.0 / r[0] + 1e-12);
    }
}

#[test]
fn remaining_demos_run() {
    for name in ["j1_shift_convergence", "halfline", "weak_vs_strong_product"] {
        let o = skorokhod(&["demo", "--name", name]);
        assert!(o.status.success(), "{name}");
        assert!(csv_rows(&stdout(&o)).len() >= 5);
    }
    let o = skorokhod(&[
        "demo",
        "--name",
        "donsker",
        "--ns",
        "100",
        "--replicas",
        "300",
        "--seed",
        "3",
    ]);
    let rows = csv_rows(&stdout(&o));
    assert!(rows[0][2] < 0.15);
}

#[test]
fn simulation_is_reproducible_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_skorokhod"))
            .env("CADLAG_THREADS", threads)
            .args([
                "diagnose",
                "tightness",
                "--process",
                "donsker",
                "--ns",
                "50",
                "--replicas",
                "100",
                "--seed",
                "9",
            ])
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s1 = skorokhod(&[
        "simulate",
        "--process",
        "poisson",
        "--rate",
        "3",
        "--seed",
        "5",
    ]);
    let s2 = skorokhod(&[
        "simulate",
        "--process",
        "poisson",
        "--rate",
        "3",
        "--seed",
        "5",
    ]);
    assert_eq!(s1.stdout, s2.stdout);
    assert_eq!(run("0").status.code(), Some(2));
}

#[test]
fn diagnose_reports() {
    let o = skorokhod(&[
        "diagnose",
        "compactness",
        "--family",
        "spike",
        "--ns",
        "10,20,40",
        "--topology",
        "m1",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("# sup_norm=1\n"));
    let o = skorokhod(&[
        "diagnose",
        "convergence",
        "--family",
        "j1_shift",
        "--ns",
        "3,5,10,20",
        "--metric",
        "j1",
    ]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("fitted rate -1.0000"));
    let o = skorokhod(&[
        "diagnose",
        "convergence",
        "--family",
        "incompleteness",
        "--ns",
        "1,2,3",
        "--metric",
        "j1",
    ]);
    assert!(o.status.success());
}
