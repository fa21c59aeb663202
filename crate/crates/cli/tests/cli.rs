use std::path::Path;
use std::process::Command;

use cartan_cli::io::AlgebraFile;
use cartan_cli::{EXIT_BUDGET, EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE};

fn cartan(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cartan")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn construct(dir: &Path, family: &str, n: &str, p: &str) -> String {
    let path = dir.join(format!("{family}{n}_{p}.json"));
    let path = path.to_str().unwrap().to_string();
    let (code, out, _) = cartan(&["construct", "--family", family, "--n", n, "--p", p, "--out", &path]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("dim"));
    path
}

#[test]
fn construct_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "W", "1", "5");
    let (code, out, _) = cartan(&["verify", &path]);
    assert_eq!(code, EXIT_PASS, "{out}");
    for check in ["jacobi", "grading", "pmap", "simple"] {
        assert!(out.lines().any(|l| l.starts_with(&format!("{check}\tpass"))), "{out}");
    }
}

#[test]
fn bad_parameters_are_usage_errors() {
    let (code, _, err) = cartan(&["construct", "--family", "W", "--n", "1", "--p", "4"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("supported grid"));
    let (code, _, _) = cartan(&["construct", "--family", "H", "--n", "3", "--p", "5"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = cartan(&["construct", "--family", "W", "--n", "9", "--p", "5"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = cartan(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn corrupted_table_fails_jacobi() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "W", "2", "5");
    let mut f = AlgebraFile::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let e = &mut f.brackets[7].2[0].1;
    *e = if *e == 1 { 2 } else { 1 };
    std::fs::write(&path, f.render()).unwrap();
    let (code, out, _) = cartan(&["verify", &path, "--checks", "jacobi"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.starts_with("jacobi\tfail"), "{out}");
}

#[test]
fn unreadable_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"schema\": 1,").unwrap();
    let (code, _, err) = cartan(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line"));
    let (code, _, _) = cartan(&["verify", "/nonexistent/file.json"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn cohomology_reports_and_budgets() {
    let dir = tempfile::tempdir().unwrap();
    let w = construct(dir.path(), "W", "1", "5");
    let (code, out, _) = cartan(&["cohomology", &w, "--q", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("H^2 = 1"), "{out}");
    let (code, out, _) = cartan(&["cohomology", &w, "--q", "2", "--mode", "dense"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("H^2 = 1"), "{out}");
    let (code, _, _) = cartan(&["cohomology", &w, "--q", "3"]);
    assert_eq!(code, EXIT_USAGE);

    let s = construct(dir.path(), "S", "3", "5");
    let (code, _, _) = cartan(&["cohomology", &s, "--q", "2", "--mode", "dense"]);
    assert_eq!(code, EXIT_BUDGET);
}

#[test]
fn theorem_and_sweep_tables() {
    let (code, out, _) = cartan(&["theorem", "--family", "H", "--n", "2", "--p", "5"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "family\tn\tp\tlisted\tspan\th2\tmatch\twall_time\nH\t2\t5\t3\t3\t3\tmatch\t-\n");

    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.txt");
    std::fs::write(&grid, "# small\nW 1 5\nsl 2 7\nW 1 4\n").unwrap();
    let (code, out, _) = cartan(&["sweep", "--grid", grid.to_str().unwrap()]);
    assert_eq!(code, EXIT_MISMATCH);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("W\t1\t5\t1\t1\t1\tmatch"));
    assert!(rows[2].starts_with("sl\t2\t7\t0\t0\t0\tmatch"));
    assert!(rows[3].contains("error"));

    std::fs::write(&grid, "").unwrap();
    let (code, out, _) = cartan(&["sweep", "--grid", grid.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.lines().count(), 1);
}
