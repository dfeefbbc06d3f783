use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stratalloc"));
    cmd.env_remove("STRATALLOC_TOL");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn values(report: &Value) -> Vec<f64> {
    report["allocation"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_f64().unwrap())
        .collect()
}

const TWO_STRATA: &str = "stratum,A,c,m\n1,1,1,3\n2,1,1,1\n";
const MIN_COST: &str = "stratum,A,c,M\n1,2,1,2\n2,1,4,1\n";

#[test]
fn solve_lower_example() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "two.csv", TWO_STRATA);
    let out = run(&[
        "solve",
        "--kind",
        "lower",
        "--vt",
        "6",
        "--input",
        s(&input),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(values(&report), [3.0, 3.0]);
    assert_eq!(report["take_set"], serde_json::json!(["1"]));
    assert!((report["objective"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(report["problem"]["kind"], "lower");
}

#[test]
fn solve_min_cost_example() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "frame.csv", MIN_COST);
    let out = run(&[
        "solve",
        "--kind",
        "mincost",
        "--v",
        "4",
        "--a0",
        "1",
        "--input",
        s(&input),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(values(&report), [1.6, 0.4]);
    assert_eq!(report["objective"].as_f64(), Some(3.2));
}

#[test]
fn solve_classical_example() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "a.csv", "A\n1\n3\n");
    let out = run(&[
        "solve",
        "--kind",
        "classical",
        "--n",
        "8",
        "--input",
        s(&input),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(values(&json(&out)), [2.0, 6.0]);
}

#[test]
fn solve_upper_example() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "u.csv", "A,M\n3,2\n1,10\n");
    let out = run(&["solve", "--kind", "upper", "--n", "4", "--input", s(&input)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(values(&json(&out)), [2.0, 2.0]);
}

#[test]
fn solve_reports_optional_sections() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "frame.csv", MIN_COST);
    let base = [
        "solve",
        "--kind",
        "mincost",
        "--v",
        "4",
        "--a0",
        "1",
        "--input",
        s(&input),
    ];
    let plain = json(&run(&base));
    for key in ["duals", "trace", "rounded"] {
        assert!(plain.get(key).is_none(), "{key}");
    }
    let mut args = base.to_vec();
    args.extend(["--trace", "--duals", "--round", "ceil"]);
    let full = json(&run(&args));
    assert!(full["duals"]["lambda"].as_f64().unwrap() > 0.0);
    assert!(full["trace"]["iterations"].as_u64().unwrap() >= 1);
    assert_eq!(full["trace"]["steps"][0]["take_set"], serde_json::json!([]));
    let rounded: Vec<f64> = full["rounded"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_f64().unwrap())
        .collect();
    assert_eq!(rounded, [2.0, 1.0]);
    assert_eq!(values(&full), [1.6, 0.4]);
}

#[test]
fn json_input_with_scalars() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "p.json",
        r#"{"strata": [{"stratum": "a", "A": 2, "c": 1, "M": 2},
                       {"stratum": "b", "A": 1, "c": 4, "M": 1}],
            "V": 4, "A0": 1}"#,
    );
    let out = run(&["solve", "--kind", "mincost", "--input", s(&input)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = json(&out);
    assert_eq!(values(&report), [1.6, 0.4]);
    assert_eq!(report["allocation"][0]["stratum"], "a");

    // flags override the file
    let out = run(&[
        "solve",
        "--kind",
        "mincost",
        "--v",
        "3",
        "--input",
        s(&input),
    ]);
    assert_eq!(json(&out)["problem"]["V"].as_f64(), Some(3.0));
}

#[test]
fn from_srswor_derives_a_and_a0() {
    let dir = TempDir::new().unwrap();
    // A = (10, 40), A0 = 90; Σ A²/M − A0 = 10 + 160 − 90 = 80
    let input = write(&dir, "s.csv", "stratum,N,S,M\n1,10,1,10\n2,20,2,10\n");
    let out = run(&[
        "solve",
        "--kind",
        "mincost",
        "--v",
        "200",
        "--from-srswor",
        "--input",
        s(&input),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = json(&out);
    assert_eq!(report["problem"]["A0"].as_f64(), Some(90.0));
    assert_eq!(report["problem"]["from_srswor"], true);

    let both = run(&[
        "solve",
        "--kind",
        "mincost",
        "--v",
        "200",
        "--a0",
        "1",
        "--from-srswor",
        "--input",
        s(&input),
    ]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn rejects_non_finite_and_non_numeric_cells() {
    let dir = TempDir::new().unwrap();
    for (k, cell) in ["NaN", "inf", "-inf", "abc", ""].iter().enumerate() {
        let input = write(
            &dir,
            &format!("bad{k}.csv"),
            &format!("A,m\n1,1\n{cell},1\n"),
        );
        let out = run(&[
            "solve",
            "--kind",
            "lower",
            "--vt",
            "6",
            "--input",
            s(&input),
        ]);
        assert_eq!(out.status.code(), Some(2), "{cell:?}");
        assert!(!out.stderr.is_empty());
    }
    let input = write(
        &dir,
        "bad.json",
        r#"{"strata": [{"A": "NaN", "m": 1}], "Vt": 2}"#,
    );
    let out = run(&["solve", "--kind", "lower", "--input", s(&input)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validation_and_infeasibility_exit_codes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "two.csv", TWO_STRATA);
    let infeasible = run(&[
        "solve",
        "--kind",
        "lower",
        "--vt",
        "3",
        "--input",
        s(&input),
    ]);
    assert_eq!(infeasible.status.code(), Some(1));

    let missing = run(&["solve", "--kind", "lower", "--input", s(&input)]);
    assert_eq!(missing.status.code(), Some(2));

    let dup = write(&dir, "dup.csv", "stratum,A,m\nx,1,1\nx,1,1\n");
    let out = run(&["solve", "--kind", "lower", "--vt", "6", "--input", s(&dup)]);
    assert_eq!(out.status.code(), Some(2));

    let neg = write(&dir, "neg.csv", "A,m\n-1,1\n");
    let out = run(&["solve", "--kind", "lower", "--vt", "6", "--input", s(&neg)]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "solve",
        "--kind",
        "lower",
        "--vt",
        "6",
        "--input",
        "/nonexistent/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_lossless() {
    let dir = TempDir::new().unwrap();
    let table =
        "stratum,A,c,m\nb,0.1,3.3,0.7\na,2.718281828459045,0.3,1e-3\nc,1.4142135623730951,7,0.01\n";
    let input = write(&dir, "awk.csv", table);
    let args = [
        "solve",
        "--kind",
        "lower",
        "--vt",
        "10.1",
        "--input",
        s(&input),
        "--trace",
        "--duals",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let frame = stratalloc::StrataFrame::new(
        vec!["b".into(), "a".into(), "c".into()],
        vec![0.1, std::f64::consts::E, std::f64::consts::SQRT_2],
        vec![3.3, 0.3, 7.0],
    )
    .unwrap()
    .with_lower(vec![0.7, 1e-3, 0.01])
    .unwrap();
    let p = stratalloc::LowerProblem::new(frame, 10.1).unwrap();
    let (alloc, _) = stratalloc::lrna(&p, &Default::default());
    assert_eq!(values(&json(&first)), alloc.values);
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "two.csv", TWO_STRATA);
    let problem = ["--kind", "lower", "--vt", "6", "--input", s(&input)];

    let solved = run(&[&["solve"][..], &problem].concat());
    let report = write(
        &dir,
        "report.json",
        std::str::from_utf8(&solved.stdout).unwrap(),
    );
    let out = run(&[&["verify"][..], &problem, &["--allocation", s(&report)]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["accepted"], true);

    let wrong = write(&dir, "z.csv", "stratum,value\n1,5\n2,1\n");
    let out = run(&[&["verify"][..], &problem, &["--allocation", s(&wrong)]].concat());
    assert_eq!(out.status.code(), Some(3));
    let verdict = json(&out);
    assert_eq!(verdict["accepted"], false);
    assert_eq!(verdict["reason"]["kind"], "TakeSetConditionFails");

    for (name, text) in [
        ("bad1.csv", "stratum,value\n1,oops\n2,1\n"),
        ("bad2.csv", "stratum,value\n1,3\n"),
        ("bad3.csv", "stratum,value\n1,3\n2,3\n9,1\n"),
        ("bad4.csv", "who,what\n1,3\n"),
        ("bad5.json", "{\"allocation\": 3}"),
    ] {
        let bad = write(&dir, name, text);
        let out = run(&[&["verify"][..], &problem, &["--allocation", s(&bad)]].concat());
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
}

#[test]
fn verify_other_kinds() {
    let dir = TempDir::new().unwrap();
    let frame = write(&dir, "frame.csv", MIN_COST);
    let good = write(&dir, "x.csv", "stratum,value\n1,1.6\n2,0.4\n");
    let bad = write(&dir, "y.csv", "stratum,value\n1,1.2\n2,0.5\n");
    let mc = [
        "verify",
        "--kind",
        "mincost",
        "--v",
        "4",
        "--a0",
        "1",
        "--input",
        s(&frame),
    ];
    assert_eq!(
        run(&[&mc[..], &["--allocation", s(&good)]].concat())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&[&mc[..], &["--allocation", s(&bad)]].concat())
            .status
            .code(),
        Some(3)
    );

    let upper = write(&dir, "u.csv", "A,M\n3,2\n1,10\n");
    let x = write(&dir, "ux.csv", "stratum,value\n1,2\n2,2\n");
    let xbad = write(&dir, "uxb.csv", "stratum,value\n1,3\n2,1\n");
    let up = [
        "verify",
        "--kind",
        "upper",
        "--n",
        "4",
        "--input",
        s(&upper),
    ];
    assert_eq!(
        run(&[&up[..], &["--allocation", s(&x)]].concat())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&[&up[..], &["--allocation", s(&xbad)]].concat())
            .status
            .code(),
        Some(3)
    );

    let cl = [
        "verify",
        "--kind",
        "classical",
        "--n",
        "4",
        "--input",
        s(&upper),
    ];
    let ney = write(&dir, "ney.csv", "stratum,value\n1,3\n2,1\n");
    assert_eq!(
        run(&[&cl[..], &["--allocation", s(&ney)]].concat())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&[&cl[..], &["--allocation", s(&x)]].concat())
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn tolerance_from_environment() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "two.csv", TWO_STRATA);
    let near = write(&dir, "near.csv", "stratum,value\n1,3.000001\n2,2.999999\n");
    let args = [
        "verify",
        "--kind",
        "lower",
        "--vt",
        "6",
        "--input",
        s(&input),
        "--allocation",
        s(&near),
    ];
    assert_eq!(run(&args).status.code(), Some(3));
    let loose = bin()
        .args(args)
        .env("STRATALLOC_TOL", "1e-5")
        .output()
        .unwrap();
    assert_eq!(loose.status.code(), Some(0));
    let invalid = bin()
        .args(args)
        .env("STRATALLOC_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(invalid.status.code(), Some(2));
    let nan = bin()
        .args(args)
        .env("STRATALLOC_TOL", "NaN")
        .output()
        .unwrap();
    assert_eq!(nan.status.code(), Some(2));
}

#[test]
fn oracle_examples() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "two.csv", TWO_STRATA);
    let out = run(&[
        "oracle",
        "--kind",
        "lower",
        "--vt",
        "6",
        "--input",
        s(&input),
        "--compare",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!(report["compare"]["max_rel_dev"].as_f64().unwrap() <= 1e-12);
    assert_eq!(values(&report), [3.0, 3.0]);

    let sym = write(&dir, "sym.csv", "A,m\n1,1\n1,1\n");
    let out = run(&["oracle", "--kind", "lower", "--vt", "4", "--input", s(&sym)]);
    assert_eq!(values(&json(&out)), [2.0, 2.0]);

    let big: String = std::iter::once("A,m\n".to_owned())
        .chain((0..21).map(|_| "1,1\n".to_owned()))
        .collect();
    let big = write(&dir, "big.csv", &big);
    let out = run(&[
        "oracle",
        "--kind",
        "lower",
        "--vt",
        "50",
        "--input",
        s(&big),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_grid_and_other_kinds() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "two.csv", TWO_STRATA);
    let out = run(&[
        "oracle",
        "--kind",
        "lower",
        "--vt",
        "6",
        "--input",
        s(&input),
        "--method",
        "grid",
        "--compare",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!(report["compare"]["max_rel_dev"].as_f64().unwrap() < 1e-4);
    assert!(report.get("take_set").is_none());

    let frame = write(&dir, "frame.csv", MIN_COST);
    for method in ["subsets", "grid"] {
        let out = run(&[
            "oracle",
            "--kind",
            "mincost",
            "--v",
            "4",
            "--a0",
            "1",
            "--input",
            s(&frame),
            "--method",
            method,
            "--compare",
        ]);
        assert_eq!(out.status.code(), Some(0), "{method}");
        assert!(json(&out)["compare"]["max_rel_dev"].as_f64().unwrap() < 1e-4);
    }

    let upper = write(&dir, "u.csv", "A,M\n3,2\n1,10\n");
    let out = run(&[
        "oracle",
        "--kind",
        "upper",
        "--n",
        "4",
        "--input",
        s(&upper),
        "--compare",
    ]);
    assert_eq!(values(&json(&out)), [2.0, 2.0]);
    let out = run(&[
        "oracle",
        "--kind",
        "classical",
        "--n",
        "4",
        "--input",
        s(&upper),
        "--compare",
    ]);
    assert!(json(&out)["compare"]["max_rel_dev"].as_f64().unwrap() <= 1e-12);
    let out = run(&[
        "oracle",
        "--kind",
        "upper",
        "--n",
        "4",
        "--input",
        s(&upper),
        "--method",
        "grid",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn batch_mode_writes_one_report_per_input() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("out");
    let mut inputs = Vec::new();
    for k in 1..=6 {
        let m = k as f64 * 0.5;
        inputs.push(write(
            &dir,
            &format!("p{k}.csv"),
            &format!("A,m\n1,{m}\n2,1\n"),
        ));
    }
    let mut args = vec![
        "solve",
        "--kind",
        "lower",
        "--vt",
        "6",
        "--jobs",
        "3",
        "--out-dir",
        s(&out_dir),
        "--input",
    ];
    args.extend(inputs.iter().map(|p| s(p)));
    let out = run(&args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());

    for (k, input) in inputs.iter().enumerate() {
        let batch = fs::read(out_dir.join(format!("p{}.json", k + 1))).unwrap();
        let single = run(&["solve", "--kind", "lower", "--vt", "6", "--input", s(input)]);
        assert_eq!(batch, single.stdout);
    }
}

#[test]
fn batch_mode_errors() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", TWO_STRATA);
    let b = write(&dir, "b.csv", "A,m\n1,5\n1,5\n");
    let out = run(&[
        "solve",
        "--kind",
        "lower",
        "--vt",
        "6",
        "--input",
        s(&a),
        s(&b),
    ]);
    assert_eq!(out.status.code(), Some(2), "needs --out-dir");

    let out_dir = dir.path().join("out");
    let out = run(&[
        "solve",
        "--kind",
        "lower",
        "--vt",
        "6",
        "--out-dir",
        s(&out_dir),
        "--input",
        s(&a),
        s(&b),
    ]);
    assert_eq!(out.status.code(), Some(1), "b is infeasible");
    assert!(out_dir.join("a.json").exists());
    assert!(!out_dir.join("b.json").exists());
    assert!(String::from_utf8_lossy(&out.stderr).contains("b.csv"));
}
