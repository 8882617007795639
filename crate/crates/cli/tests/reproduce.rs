use std::collections::BTreeMap;
use std::process::Command;

use qcorr_cli::output::{load_envelope, load_table, meta_path};

/// Runs `qcorr reproduce --figure N` and groups the `(x, D)` columns by order.
fn figure(n: &str, x: &str) -> BTreeMap<String, Vec<(f64, f64)>> {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("figure.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_qcorr"))
        .args(["reproduce", "--figure", n, "-o", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let meta = load_envelope(meta_path(&path)).unwrap();
    assert_eq!(meta.provenance.config["command"]["figure"], n);
    let t = load_table(&path).unwrap();
    let (a, xi, d) = (t.column("alpha").unwrap(), t.column(x).unwrap(), t.column("D").unwrap());
    let mut by_alpha: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for r in &t.rows {
        by_alpha
            .entry(r[a].clone())
            .or_default()
            .push((r[xi].parse().unwrap(), r[d].parse().unwrap()));
    }
    by_alpha
}

fn at(curve: &[(f64, f64)], x: f64) -> f64 {
    curve.iter().find(|p| (p.0 - x).abs() < 1e-9).expect("grid point").1
}

fn nondecreasing(curve: &[(f64, f64)]) -> bool {
    curve.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-6)
}

fn symmetric(curve: &[(f64, f64)]) -> bool {
    curve
        .iter()
        .zip(curve.iter().rev())
        .all(|(a, b)| (a.1 - b.1).abs() <= 1e-4)
}

const TOL: f64 = 1e-4;

#[test]
fn pure_state_curves() {
    let curves = figure("1", "param");
    assert_eq!(curves.len(), 5);
    for (alpha, c) in &curves {
        assert_eq!(c.len(), 51);
        assert!(at(c, 0.0).abs() <= 1e-5 && at(c, 1.0).abs() <= 1e-5, "alpha {alpha}");
        assert!(symmetric(c), "alpha {alpha}");
        if alpha == "0.5" {
            assert!(c.iter().all(|p| p.1 <= 1e-5));
        } else {
            assert!((at(c, 0.5) - 1.0).abs() <= TOL, "alpha {alpha}");
            assert!(nondecreasing(&c[..26]), "alpha {alpha}");
        }
    }
}

#[test]
fn werner_curves() {
    for (alpha, c) in &figure("3", "param") {
        assert!(at(c, 0.0).abs() <= 1e-5, "alpha {alpha}");
        if alpha == "0.5" {
            let top = c
                .iter()
                .cloned()
                .fold((0.0, f64::MIN), |m, p| if p.1 > m.1 { p } else { m });
            assert!((0.85..=0.91).contains(&top.0), "{top:?}");
        } else {
            assert!(nondecreasing(c), "alpha {alpha}");
            assert!((at(c, 1.0) - 1.0).abs() <= TOL, "alpha {alpha}");
        }
    }
}

#[test]
fn bell_mixture_curves() {
    for (alpha, c) in &figure("4", "param") {
        assert!(at(c, 0.5).abs() <= 1e-5, "alpha {alpha}");
        assert!(symmetric(c), "alpha {alpha}");
        if alpha != "0.5" {
            assert!((at(c, 0.0) - 1.0).abs() <= TOL && (at(c, 1.0) - 1.0).abs() <= TOL);
            assert!(nondecreasing(&c[25..]), "alpha {alpha}");
        }
    }
}

#[test]
fn bell_noise_curves() {
    for (alpha, c) in &figure("5", "param") {
        assert!(at(c, 0.0).abs() <= 1e-5, "alpha {alpha}");
        if alpha != "0.5" {
            assert!(nondecreasing(c), "alpha {alpha}");
            assert!((at(c, 1.0) - 1.0).abs() <= TOL);
        }
    }
}

#[test]
fn infinite_chain_curves() {
    let curves = figure("8", "lambda");
    assert_eq!(curves.len(), 5);
    for (alpha, c) in &curves {
        assert_eq!(c.len(), 60);
        if alpha == "0.5" {
            continue;
        }
        assert!(c[0].1 < 1e-3, "alpha {alpha}: {}", c[0].1);
        let steepest = c
            .windows(2)
            .map(|w| ((w[0].0 + w[1].0) / 2.0, (w[1].1 - w[0].1) / (w[1].0 - w[0].0)))
            .fold((0.0, f64::MIN), |m, s| if s.1 > m.1 { s } else { m });
        assert!(
            (steepest.0 - 1.0).abs() <= 0.05,
            "alpha {alpha}: steepest rise at {}",
            steepest.0
        );
    }
}
