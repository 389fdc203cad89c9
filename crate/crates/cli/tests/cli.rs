use std::process::{Command, Output};

fn phasekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasekit")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(csv: &str, name: &str) -> f64 {
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    let col = rows[0].split(',').position(|h| h == name).expect("column present");
    rows[1].split(',').nth(col).unwrap().parse().unwrap()
}

#[test]
fn expect_fock_vacuum() {
    let out = phasekit(&["expect", "--family", "chebyshev-u", "--state", "fock:0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "mean_C"), 0.0);
    assert_eq!(field(&text, "var_C"), 0.25);
}

#[test]
fn expect_routes_agree() {
    let base = ["expect", "--family", "jacobi", "--mu", "-0.5", "--nu", "0.5", "--state", "coherent:1,1", "--dim", "40"];
    let closed = stdout(&phasekit(&[&base[..], &["--route", "closed"]].concat()));
    let trace = stdout(&phasekit(&[&base[..], &["--route", "trace"]].concat()));
    for name in ["mean_C", "mean_S2", "var_C", "cov_NS"] {
        assert!((field(&closed, name) - field(&trace, name)).abs() < 1e-10, "{name}");
    }
}

#[test]
fn dist_is_deterministic_and_uniform_for_chebyshev_t_vacuum() {
    let args = ["dist", "--var", "arccos", "--family", "chebyshev-t", "--state", "fock:0", "--grid", "11"];
    let a = phasekit(&args);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let b = phasekit(&seq);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let rows: Vec<&str> = text.lines().skip_while(|l| *l != "x,density").skip(1).collect();
    assert_eq!(rows.len(), 11);
    for row in rows {
        let p: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((p - 1.0 / std::f64::consts::PI).abs() < 1e-12);
    }
}

#[test]
fn figure_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = phasekit(&["figure", "f3", "--out", dir.path().to_str().unwrap(), "--grid", "21"]);
    assert!(out.status.success());
    let listed = stdout(&out);
    assert_eq!(listed.lines().count(), 7);
    let sample = std::fs::read_to_string(dir.path().join("f3_lambda1_n0.csv")).unwrap();
    assert!(sample.starts_with("# figure: f3\n"));
    assert!(sample.contains("x,density\n"));
}

#[test]
fn op_writes_matrix_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = phasekit(&["op", "cosine", "--family", "legendre", "--dim", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().next(), Some("row,col,re,im"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["family", "--family", "gegenbauer", "coeffs", "--n-max", "3"],
        vec!["expect", "--family", "legendre", "--state", "fock:0", "--mu", "0.5"],
        vec!["op", "cosine", "--dim", "4"],
        vec!["bogus"],
    ] {
        let out = phasekit(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn computation_errors_exit_1_with_code() {
    let out = phasekit(&["expect", "--family", "legendre", "--state", "fock:9", "--dim", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("ERROR SUPPORT_EXCEEDS_TRUNCATION"));
    let out = phasekit(&["family", "--family", "gegenbauer", "--lambda", "0", "coeffs", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_single_criterion() {
    let out = phasekit(&["verify", "--suite", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1/1 checks passed"));
}
