use std::f64::consts::PI;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disentangle"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn pair(out: &Output) -> (f64, f64) {
    let text = stdout(out);
    let mut it = text.split_whitespace().map(|t| t.parse::<f64>().unwrap());
    (it.next().unwrap(), it.next().unwrap())
}

// The command-line example passes θ as the literal 1.5707963.
#[allow(clippy::approx_constant)]
#[test]
fn eval_y1_minus1() {
    let out = run(&[
        "eval",
        "--l",
        "1",
        "--m",
        "-1",
        "--theta",
        "1.5707963",
        "--phi",
        "0",
        "--method",
        "middle",
    ]);
    assert!(out.status.success());
    let (re, im) = pair(&out);
    let expect = (3.0 / (8.0 * PI)).sqrt() * 1.5707963f64.sin();
    assert!((re - expect).abs() < 1e-15);
    assert_eq!(im, 0.0);
    assert!((re - 0.3454941494).abs() < 1e-10);
}

#[test]
fn eval_monopole_defaults() {
    let out = run(&["eval", "--l", "0", "--m", "0", "--theta", "0", "--phi", "0"]);
    assert!(out.status.success());
    let (re, im) = pair(&out);
    assert!((re - 0.28209479177387814).abs() < 1e-16);
    assert_eq!(im, 0.0);
}

#[test]
fn eval_every_method_agrees() {
    let values: Vec<(f64, f64)> = ["form1", "form2", "middle", "operator", "legendre"]
        .iter()
        .map(|method| {
            let out = run(&[
                "eval", "--l", "4", "--m", "-3", "--theta", "0.9", "--phi", "2.1", "--method",
                method,
            ]);
            assert!(out.status.success(), "{method}");
            pair(&out)
        })
        .collect();
    for v in &values {
        assert!((v.0 - values[0].0).abs() < 1e-12 && (v.1 - values[0].1).abs() < 1e-12);
    }
}

#[test]
fn eval_rejections_exit_two() {
    let cases: [&[&str]; 6] = [
        &[
            "eval", "--l", "1", "--m", "-1", "--theta", "0", "--method", "form1",
        ],
        &["eval", "--l", "1", "--m", "2", "--theta", "0.5"],
        &["eval", "--l", "1", "--m", "0", "--theta", "4"],
        &[
            "eval", "--l", "1", "--m", "0", "--theta", "0.5", "--method", "bogus",
        ],
        &["eval", "--l", "-1", "--m", "0", "--theta", "0.5"],
        &["eval", "--l", "1"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = run(&[
        "eval", "--l", "1", "--m", "-1", "--theta", "0", "--method", "form1",
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular"));
}

fn read_grid(path: &std::path::Path) -> Vec<[f64; 4]> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["theta", "phi", "re", "im"]);
    reader.deserialize().map(|r| r.unwrap()).collect()
}

#[test]
fn grid_monopole() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    let out = run(&[
        "grid",
        "--l",
        "0",
        "--m",
        "0",
        "--ntheta",
        "2",
        "--nphi",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows = read_grid(&path);
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert!((row[2] - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-16);
        assert_eq!(row[3], 0.0);
    }
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.ends_with(b"\n") && !bytes.contains(&b'\r'));
}

#[test]
fn grid_follows_cosine() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    let out = run(&[
        "grid",
        "--l",
        "1",
        "--m",
        "0",
        "--ntheta",
        "3",
        "--nphi",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows = read_grid(&path);
    let thetas: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(thetas, vec![0.0, PI / 2.0, PI]);
    let k = (3.0 / (4.0 * PI)).sqrt();
    for row in rows {
        assert!((row[2] - k * row[0].cos()).abs() < 1e-15);
    }
}

#[test]
fn grid_layout_and_pole_gap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    let out = run(&[
        "grid",
        "--l",
        "3",
        "--m",
        "-2",
        "--ntheta",
        "4",
        "--nphi",
        "3",
        "--method",
        "form1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = read_grid(&path);
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0][0], 1e-6);
    assert!((rows[11][0] - (PI - 1e-6)).abs() < 1e-15);
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row[1], 2.0 * PI * (k % 3) as f64 / 3.0);
        assert_eq!(row[0], rows[k - k % 3][0]);
    }
}

#[test]
fn grid_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "grid",
            "--l",
            "5",
            "--m",
            "2",
            "--ntheta",
            "7",
            "--nphi",
            "5",
            "--method",
            "operator",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn grid_values_round_trip() {
    let out = run(&[
        "grid", "--l", "2", "--m", "1", "--ntheta", "3", "--nphi", "2",
    ]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    for row in reader.deserialize::<[f64; 4]>() {
        let row = row.unwrap();
        let y = disentangle::ylm(2, 1, row[0], row[1], disentangle::Method::Middle).unwrap();
        assert_eq!((row[2], row[3]), (y.re + 0.0, y.im + 0.0));
    }
}

#[test]
fn grid_rejects_empty() {
    let out = run(&[
        "grid", "--l", "1", "--m", "0", "--ntheta", "0", "--nphi", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

fn table_rows(out: &Output) -> Vec<Vec<String>> {
    stdout(out)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect()
}

#[test]
fn verify_spin_one() {
    let out = run(&["verify", "--lmax", "1"]);
    assert!(out.status.success());
    let rows = table_rows(&out);
    assert_eq!(rows.len(), 8);
    for row in rows.iter().filter(|r| r[0] == "disentangling") {
        let dev: f64 = row[row.len() - 3].parse().unwrap();
        assert!(dev < 1e-12);
    }
    assert!(rows.iter().all(|r| r.last().unwrap() == "pass"));
}

#[test]
fn verify_lmax_zero() {
    let out = run(&["verify", "--lmax", "0"]);
    assert!(out.status.success());
    let rows = table_rows(&out);
    let agreement = rows.iter().find(|r| r[0] == "route").unwrap();
    assert_eq!(agreement[agreement.len() - 3].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn verify_is_reproducible_and_gates_exit() {
    let a = run(&["verify", "--lmax", "3", "--samples", "10", "--seed", "7"]);
    let b = run(&["verify", "--lmax", "3", "--samples", "10", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let strict = run(&[
        "verify",
        "--lmax",
        "3",
        "--samples",
        "10",
        "--seed",
        "7",
        "--tolerance",
        "0",
    ]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stdout(&strict).contains("FAIL"));
}

#[test]
fn wigner_d_half_integer() {
    let out = run(&[
        "wigner-d", "--l", "1/2", "--mp", "1/2", "--m", "-1/2", "--theta", "0.8",
    ]);
    assert!(out.status.success());
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 0.4f64.sin()).abs() < 1e-15);

    let out = run(&["wigner-d", "--l", "1", "--theta", "0.8"]);
    assert!(out.status.success());
    let rows: Vec<Vec<f64>> = stdout(&out)
        .lines()
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert!((rows[1][1] - 0.8f64.cos()).abs() < 1e-14);
    assert!((rows[1][2] - 0.8f64.sin() / 2f64.sqrt()).abs() < 1e-14);

    let out = run(&[
        "wigner-d", "--l", "1", "--mp", "2", "--m", "0", "--theta", "0.8",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["wigner-d", "--l", "1", "--mp", "0", "--theta", "0.8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_row_contract() {
    let out = run(&["bench", "--lmax", "1", "--reps", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("method,l,median_ns"));
    let keys: Vec<(String, u32)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            f[2].parse::<u128>().unwrap();
            (f[0].to_string(), f[1].parse().unwrap())
        })
        .collect();
    assert_eq!(keys.len(), 10);
    for method in ["form1", "form2", "middle", "operator", "legendre"] {
        for l in 0..=1 {
            assert!(keys.contains(&(method.to_string(), l)));
        }
    }
    let again = run(&["bench", "--lmax", "1", "--reps", "1"]);
    let strip = |s: &str| {
        s.lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&text), strip(&stdout(&again)));
    assert_eq!(
        run(&["bench", "--lmax", "1", "--reps", "0"]).status.code(),
        Some(2)
    );
}
