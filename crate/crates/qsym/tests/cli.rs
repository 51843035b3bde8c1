use std::fs;
use std::process::{Command, Output};

use qsym::format::{from_json, to_json, Document};
use qsym_core::metric::projector;
use qsym_core::qscalar::{Numeric, QScalar};
use qsym_core::sparse::SparseMatrix;

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym"))
        .args(args)
        .env_remove("QSYM_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn exact_transposition_reads_back() {
    let out = qsym(&["emit", "qtransposition", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let Document::Matrix(doc) = from_json(&text).unwrap() else {
        panic!("expected a matrix");
    };
    let m: SparseMatrix<QScalar> = doc.matrix().unwrap();
    assert_eq!(m.get(1, 2), QScalar::s_pow(-2));
    assert_eq!(m.get(2, 1), QScalar::s_pow(2));
    assert_eq!(to_json(&Document::Matrix(doc)).unwrap(), text);
}

#[test]
fn numeric_projector_matches_library() {
    let out = qsym(&["emit", "projector", "--n", "3", "--q", "0.7"]);
    assert_eq!(out.status.code(), Some(0));
    let Document::Matrix(doc) = from_json(&stdout(&out)).unwrap() else {
        panic!("expected a matrix");
    };
    let m: SparseMatrix<f64> = doc.matrix().unwrap();
    let expected = projector(3, &Numeric::new(0.7).unwrap()).unwrap();
    // Chunked summation may differ from the serial sum in the last bit.
    assert!(m.relative_distance(expected.matrix()).unwrap() < 1e-14);
}

#[test]
fn exit_codes() {
    assert_eq!(qsym(&["verify", "hecke", "--n", "3"]).status.code(), Some(0));
    assert_eq!(qsym(&["emit", "projector", "--n", "6"]).status.code(), Some(3));
    assert_eq!(qsym(&["emit", "projector", "--n", "8", "--q", "2"]).status.code(), Some(3));
    assert_eq!(qsym(&["verify", "metric", "--n", "9"]).status.code(), Some(3));
    assert_eq!(qsym(&["verify", "bogus", "--n", "3"]).status.code(), Some(2));
    assert_eq!(qsym(&["emit", "qdicke", "--n", "3"]).status.code(), Some(2));
    assert_eq!(qsym(&["emit", "qdicke", "--n", "3", "--m", "4"]).status.code(), Some(2));
    assert_eq!(qsym(&["emit", "qtransposition", "--n", "3", "--q", "-1", "--i", "1"]).status.code(), Some(2));
    assert_eq!(qsym(&["emit", "qperm", "--n", "3", "--perm", "1,1,2"]).status.code(), Some(2));
    assert_eq!(qsym(&["spectrum", "--n", "3", "--exact"]).status.code(), Some(2));
    assert_eq!(qsym(&["emit", "metric"]).status.code(), Some(2));
}

#[test]
fn max_n_override_lifts_the_chain_cap() {
    assert_eq!(qsym(&["emit", "ctau", "--n", "9"]).status.code(), Some(3));
    assert_eq!(qsym(&["emit", "ctau", "--n", "9", "--max-n", "9"]).status.code(), Some(0));
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "all", "--n", "4", "--q", "1/2,2", "--seed", "7"];
    let a = qsym(&args);
    let b = qsym(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let Document::Report(report) = from_json(&stdout(&a)).unwrap() else {
        panic!("expected a report");
    };
    assert!(report.pass);
    assert!(report.checks.iter().any(|c| c.q_values == vec![0.5]));
    assert!(report.checks.iter().any(|c| c.q_values == vec![2.0]));
}

#[test]
fn out_file_and_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let absolute = dir.path().join("w.json");
    let out = qsym(&["emit", "qdicke", "--n", "3", "--m", "1", "--out", absolute.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = fs::read_to_string(&absolute).unwrap();
    assert!(matches!(from_json(&written).unwrap(), Document::State(_)));

    let status = Command::new(env!("CARGO_BIN_EXE_qsym"))
        .args(["emit", "metric", "--n", "2", "--format", "csv", "--out", "metric.csv"])
        .env("QSYM_OUTPUT_DIR", dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("metric.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn spectrum_reports_sectors() {
    let out = qsym(&["spectrum", "--n", "4", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let Document::Sectors(doc) = from_json(&stdout(&out)).unwrap() else {
        panic!("expected sectors");
    };
    let mults: Vec<_> = doc.sectors.iter().map(|s| (s.two_j, s.multiplicity)).collect();
    assert_eq!(mults, vec![(4, 1), (2, 3), (0, 2)]);
    assert_eq!(doc.total_dimension, 16);
}
