use super::*;
use crate::entropy::von_neumann_entropy;
use crate::qstate::{kron, partial_trace, random_density_matrix_with, random_pure_state, random_unitary};
use crate::scalar::C;
use crate::states;

fn quick() -> OptimizerConfig {
    OptimizerConfig {
        starts: 6,
        measurement_grid: 8,
        ..Default::default()
    }
}

fn kinds() -> Vec<EntropyKind<f64>> {
    vec![
        EntropyKind::renyi(0.7).unwrap(),
        EntropyKind::renyi(2.0).unwrap(),
        EntropyKind::renyi(5.0).unwrap(),
        EntropyKind::linear(),
        EntropyKind::max(),
    ]
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn werner_spot_values() {
    let one = werner_closed_form(1.0, &EntropyKind::renyi(2.0).unwrap()).unwrap();
    assert!(close(one.quantum, 1.0, 1e-12));
    let lin = werner_closed_form(1.0, &EntropyKind::linear()).unwrap();
    assert!(close(lin.quantum, 2.0, 1e-12));
    let max = werner_closed_form(1.0, &EntropyKind::max()).unwrap();
    assert!(close(max.quantum, 1.0, 1e-12));
    let half = werner_closed_form(0.5, &EntropyKind::max()).unwrap();
    assert!(close(half.quantum, (2.5f64 / 1.5).log2(), 1e-12));
    for k in kinds() {
        let zero = werner_closed_form(0.0, &k).unwrap();
        assert!(zero.total.abs() < 1e-12 && zero.quantum.abs() < 1e-12, "{k}");
    }
    assert!(matches!(
        werner_closed_form(0.5, &EntropyKind::renyi(0.6).unwrap()),
        Err(Error::OutOfClosedFormRange(_))
    ));
}

#[test]
fn werner_linear_matches_quadratic_form() {
    for i in 0..=10 {
        let p = 0.1 * i as f64;
        let d = werner_closed_form(p, &EntropyKind::linear()).unwrap().quantum;
        let expected = 0.25 * ((1.0 + 3.0 * p).powi(2) + (1.0 - p).powi(2) - 2.0 * (1.0 + p).powi(2));
        assert!(close(d, expected, 1e-12), "p={p}");
    }
}

#[test]
fn bell_mixture_spot_values() {
    for k in kinds().into_iter().filter(|k| k.alpha().is_none_or(|a| a >= 2.0 / 3.0)) {
        let half = bell_mixture_closed_form(0.5, &k).unwrap();
        assert!(half.quantum.abs() < 1e-12, "{k}");
        let one = bell_mixture_closed_form(1.0, &k).unwrap();
        let expected = if k.family == Family::Tsallis { 2.0 } else { 1.0 };
        assert!(close(one.quantum, expected, 1e-12), "{k}");
        assert!(close(one.classical, 1.0, 1e-12), "{k}");
    }
    let lin = bell_mixture_closed_form(0.9, &EntropyKind::linear()).unwrap();
    assert!(close(lin.quantum, 1.28, 1e-12));
}

#[test]
fn pure_spot_values() {
    let lin = pure_closed_form(0.5, &EntropyKind::linear()).unwrap();
    assert!(close(lin.quantum, 2.0, 1e-12));
    let max = pure_closed_form(0.5, &EntropyKind::max()).unwrap();
    assert!(close(max.quantum, 1.0, 1e-12));
    for k in kinds() {
        let r = pure_closed_form(0.0, &k).unwrap();
        assert!(r.total == 0.0 && r.classical == 0.0 && r.quantum == 0.0, "{k}");
    }
    for l in [0.1f64, 0.3, 0.5, 0.8] {
        let min = pure_closed_form(l, &EntropyKind::min()).unwrap();
        assert!(min.quantum.abs() < 1e-12, "lambda={l}");
        let vn = pure_closed_form(l, &EntropyKind::von_neumann()).unwrap();
        assert!(close(vn.total, 2.0 * vn.classical, 1e-12));
    }
    let trad = EntropyKind::traditional_renyi(0.7).unwrap();
    assert!(matches!(pure_closed_form(0.3, &trad), Err(Error::UnsupportedKind(_))));
    assert_eq!(pure_total_closed_form(0.0, &trad).unwrap().0, 0.0);
}

#[test]
fn pure_linear_discord_uses_cube_root_sum() {
    for l in [0.1f64, 0.25, 0.5, 0.9] {
        let s = l.sqrt() + (1.0 - l).sqrt();
        let c = l.powf(2.0 / 3.0) + (1.0 - l).powf(2.0 / 3.0);
        let d = pure_closed_form(l, &EntropyKind::linear()).unwrap().quantum;
        assert!(close(d, s.powi(4) - c.powi(3), 1e-12), "lambda={l}");
    }
}

#[test]
fn optimizer_matches_closed_forms() {
    let cfg = quick();
    for k in kinds() {
        for x in [0.15, 0.5, 0.85] {
            let cases = [
                (states::schmidt_pure(x), pure_closed_form(x, &k).unwrap()),
                (states::werner(x), werner_closed_form(x, &k).unwrap()),
                (
                    states::bell_mixture(x),
                    bell_mixture_closed_form(x, &k)
                        .or_else(|_| werner_closed_form(x, &k))
                        .unwrap(),
                ),
            ];
            for (i, (rho, cf)) in cases.iter().enumerate() {
                if i == 2 && k.alpha().is_some_and(|a| a < 2.0 / 3.0) {
                    continue;
                }
                let r = quantum_correlation(rho, &k, &cfg).unwrap();
                assert!(
                    close(r.total, cf.total, 1e-5),
                    "{k} case {i} x={x}: {} vs {}",
                    r.total,
                    cf.total
                );
                assert!(
                    close(r.classical, cf.classical, 1e-5),
                    "{k} case {i} x={x}: {} vs {}",
                    r.classical,
                    cf.classical
                );
            }
        }
    }
}

#[test]
fn traditional_total_matches_pure_closed_form() {
    let cfg = quick();
    for alpha in [0.5, 0.7, 0.9] {
        let k = EntropyKind::traditional_renyi(alpha).unwrap();
        for l in [0.1, 0.4, 0.7] {
            let (cf, z) = pure_total_closed_form(l, &k).unwrap();
            let (v, arg) = total_correlation(&states::schmidt_pure(l), &k, &cfg).unwrap();
            assert!(close(v, cf, 1e-5), "alpha={alpha} lambda={l}: {v} vs {cf}");
            assert!(close(arg.bloch_a[2], z, 1e-2) || cf.abs() < 1e-9);
        }
    }
}

#[test]
fn reduced_classical_search_agrees_with_full_search() {
    let cfg = quick();
    let mut rng = seeded_rng(11);
    let ks = [
        EntropyKind::renyi(0.7).unwrap(),
        EntropyKind::renyi(2.0).unwrap(),
        EntropyKind::traditional_renyi(0.6).unwrap(),
        EntropyKind::max(),
    ];
    for _ in 0..3 {
        let rho: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2, 2]);
        for k in &ks {
            let f = Functional::of(k);
            let reduced = Inner::new(&rho, f, true, &cfg);
            let full = Inner::new(&rho, f, false, &cfg);
            for m in [ProjectiveMeasurement::z(), ProjectiveMeasurement::new(0.7, 2.1)] {
                let mut t = Tally::default();
                let a = reduced.score(&m, &[], 4, 1, &mut t).value;
                let b = full.score(&m, &[], 4, 1, &mut t).value;
                assert!(close(a, b, 1e-6), "{k}: reduced {a} full {b}");
            }
        }
    }
}

#[test]
fn product_states_carry_no_correlation() {
    let mut rng = seeded_rng(3);
    let a: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2]);
    let b: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2]);
    let rho = DensityMatrix::product(&a, &b);
    for k in kinds() {
        let r = quantum_correlation(&rho, &k, &quick()).unwrap();
        assert!(r.total.abs() < 1e-6 && r.quantum.abs() < 1e-6, "{k}: {r:?}");
    }
    let vn = von_neumann_discord(&rho, &quick()).unwrap();
    assert!(vn.total.abs() < 1e-9 && vn.quantum.abs() < 1e-9);
}

#[test]
fn quantum_classical_states_have_no_discord() {
    let mut rng = seeded_rng(5);
    let a0: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2]);
    let a1: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2]);
    let rho = states::quantum_classical([0.3, 0.7], [&a0, &a1]);
    for k in kinds() {
        let r = quantum_correlation(&rho, &k, &quick()).unwrap();
        assert!(r.quantum <= 1e-6 && r.quantum >= 0.0, "{k}: {}", r.quantum);
    }
}

#[test]
fn min_discord_of_random_pure_states_vanishes() {
    let mut rng = seeded_rng(17);
    for _ in 0..3 {
        let rho: DensityMatrix<f64> = random_pure_state(&mut rng, vec![2, 2]);
        let r = quantum_correlation(&rho, &EntropyKind::min(), &quick()).unwrap();
        assert!(r.quantum <= 1e-5, "{}", r.quantum);
    }
}

#[test]
fn von_neumann_bell_values() {
    let r = von_neumann_discord(&states::bell_phi_plus::<f64>(), &quick()).unwrap();
    assert!(close(r.total, 2.0, 1e-9) && close(r.classical, 1.0, 1e-9) && close(r.quantum, 1.0, 1e-9));
}

/// Independent discord: generic matrices, measurement on a 10⁻³ rad polar grid.
fn brute_force_vn_discord(rho: &DensityMatrix<f64>, phis: &[f64]) -> f64 {
    let rho_a = partial_trace(rho, 0).unwrap();
    let rho_b = partial_trace(rho, 1).unwrap();
    let total = von_neumann_entropy(&rho_a) + von_neumann_entropy(&rho_b) - von_neumann_entropy(rho);
    let s_a = von_neumann_entropy(&rho_a);
    let mut best = f64::NEG_INFINITY;
    let steps = (std::f64::consts::PI / 1e-3) as usize;
    for &phi in phis {
        for i in 0..=steps {
            let m = ProjectiveMeasurement::new(i as f64 * 1e-3, phi);
            let mut cond = 0.0;
            for proj in m.projectors() {
                let k = kron(&crate::qstate::identity(2), &proj);
                let block = &k * rho.matrix() * &k;
                let p = block.trace().re;
                if p > 1e-14 {
                    let cond_state = DensityMatrix::new(block.map(|z| z / p), vec![2, 2]).unwrap();
                    cond += p * von_neumann_entropy(&partial_trace(&cond_state, 0).unwrap());
                }
            }
            best = best.max(s_a - cond);
        }
    }
    total - best
}

#[test]
fn von_neumann_werner_discord_matches_brute_force() {
    let rho = states::werner(0.5);
    let oracle = brute_force_vn_discord(&rho, &[0.0, 1.0]);
    let r = von_neumann_discord(&rho, &quick()).unwrap();
    assert!(close(r.quantum, oracle, 1e-6), "{} vs {oracle}", r.quantum);
    assert!(close(r.quantum, 0.262_483_183_763_732, 1e-9), "{}", r.quantum);
}

#[test]
fn local_unitaries_leave_discord_unchanged() {
    let mut rng = seeded_rng(23);
    let rho: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2, 2]);
    for k in [
        EntropyKind::renyi(2.0).unwrap(),
        EntropyKind::max(),
        EntropyKind::von_neumann(),
    ] {
        let base = quantum_correlation(&rho, &k, &quick()).unwrap();
        for _ in 0..2 {
            let u = kron(&random_unitary(&mut rng, 2), &random_unitary(&mut rng, 2));
            let r = quantum_correlation(&rho.conjugate(&u), &k, &quick()).unwrap();
            assert!(
                close(r.quantum, base.quantum, 1e-5),
                "{k}: {} vs {}",
                r.quantum,
                base.quantum
            );
        }
    }
}

#[test]
fn local_measurements_do_not_increase_correlations() {
    let mut rng = seeded_rng(29);
    let rho: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2, 2]);
    let m = ProjectiveMeasurement::new(1.1, 0.4);
    let on_b = apply_pvm_on_b(&rho, &m).unwrap();
    let swap = crate::qstate::complex_matrix(
        &[
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ],
        &[vec![0.0; 4], vec![0.0; 4], vec![0.0; 4], vec![0.0; 4]],
    )
    .unwrap();
    let on_a = apply_pvm_on_b(&rho.conjugate(&swap), &m).unwrap().conjugate(&swap);
    for k in [
        EntropyKind::renyi(2.0).unwrap(),
        EntropyKind::renyi(0.7).unwrap(),
        EntropyKind::max(),
    ] {
        let base = quantum_correlation(&rho, &k, &quick()).unwrap();
        for after in [&on_a, &on_b] {
            let r = quantum_correlation(after, &k, &quick()).unwrap();
            assert!(r.total <= base.total + 1e-6, "{k}: I {} > {}", r.total, base.total);
            assert!(
                r.classical <= base.classical + 1e-6,
                "{k}: J {} > {}",
                r.classical,
                base.classical
            );
        }
    }
}

#[test]
fn alpha_near_one_approaches_von_neumann() {
    let mut rng = seeded_rng(31);
    for _ in 0..2 {
        let rho: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2, 2]);
        let vn = von_neumann_discord(&rho, &quick()).unwrap().quantum;
        for alpha in [1.0 - 1e-4, 1.0 + 1e-4] {
            let r = quantum_correlation(&rho, &EntropyKind::renyi(alpha).unwrap(), &quick()).unwrap();
            assert!(close(r.quantum, vn, 1e-3), "alpha={alpha}: {} vs {vn}", r.quantum);
        }
    }
}

#[test]
fn symmetric_states_give_symmetric_argmins() {
    let k = EntropyKind::renyi(2.0).unwrap();
    for rho in [
        states::werner(0.7f64),
        states::schmidt_pure(0.3),
        states::bell_mixture(0.8),
    ] {
        let (_, arg) = total_correlation(&rho, &k, &quick()).unwrap();
        let gap = (0..3)
            .map(|i| (arg.bloch_a[i] - arg.bloch_b[i]).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(gap <= 1e-3, "{arg:?}");
    }
}

#[test]
fn pure_argmin_is_diagonal_in_schmidt_basis() {
    for k in [EntropyKind::renyi(2.0).unwrap(), EntropyKind::renyi(0.8).unwrap()] {
        let (_, arg) = total_correlation(&states::schmidt_pure(0.3f64), &k, &quick()).unwrap();
        for r in [arg.bloch_a, arg.bloch_b] {
            assert!(r[0].abs() <= 1e-3 && r[1].abs() <= 1e-3, "{k}: {arg:?}");
        }
    }
}

#[test]
fn tsallis_values_follow_from_renyi_values() {
    let rho = states::werner(0.6);
    let r = quantum_correlation(&rho, &EntropyKind::renyi(2.0).unwrap(), &quick()).unwrap();
    let t = quantum_correlation(&rho, &EntropyKind::linear(), &quick()).unwrap();
    let g = |x: f64| 2f64.powf(x) - 1.0;
    assert!(close(t.total, g(r.total), 1e-9) && close(t.classical, g(r.classical), 1e-9));
}

fn ket(a: f64, b: f64) -> DensityMatrix<f64> {
    DensityMatrix::from_pure(&[C::new(a, 0.0), C::new(b, 0.0)], vec![2]).unwrap()
}

#[test]
fn small_negative_discord_is_clamped() {
    let qc = states::quantum_classical([0.5, 0.5], [&ket(1.0, 0.0), &ket(0.6, 0.8)]);
    let r = quantum_correlation(&qc, &EntropyKind::renyi(2.0).unwrap(), &quick()).unwrap();
    assert!(r.quantum >= 0.0);
    assert!(r.diagnostics.raw_quantum >= -DISCORD_CLAMP);
    assert!(r.diagnostics.raw_quantum.abs() <= 1e-6);
}

#[test]
fn outside_dpi_range_is_flagged() {
    let k = EntropyKind::renyi(0.3).unwrap();
    let r = quantum_correlation(&states::werner(0.5), &k, &quick()).unwrap();
    assert!(r.diagnostics.outside_dpi_range);
    let k = EntropyKind::traditional_renyi(3.0).unwrap();
    let r = quantum_correlation(&states::werner(0.5), &k, &quick()).unwrap();
    assert!(r.diagnostics.outside_dpi_range);
}

#[test]
fn anomaly_scan_at_large_alpha_peaks_at_the_boundary() {
    let grid: Vec<f64> = (0..=10).map(|i| 0.5 + 0.05 * i as f64).collect();
    let peak = werner_anomaly_scan(&EntropyKind::renyi(0.9).unwrap(), &grid, &quick()).unwrap();
    assert!(peak.at_boundary && peak.p_max == 1.0);
    assert_eq!(peak.curve.len(), grid.len());
    assert!(matches!(
        werner_anomaly_scan(&EntropyKind::renyi(0.6).unwrap(), &grid[..2], &quick()),
        Err(Error::TooFewPoints { got: 2, .. })
    ));
}

#[test]
fn rejects_non_two_qubit_input() {
    let rho = DensityMatrix::<f64>::maximally_mixed(vec![3]);
    assert!(quantum_correlation(&rho, &EntropyKind::renyi(2.0).unwrap(), &quick()).is_err());
}

#[test]
fn runs_in_single_precision() {
    let rho = states::werner(0.8f32);
    let k = EntropyKind::renyi(2.0f32).unwrap();
    let cfg = OptimizerConfig {
        objective_tol: 1e-6,
        ..quick()
    };
    let r = quantum_correlation(&rho, &k, &cfg).unwrap();
    let cf = werner_closed_form(0.8f32, &k).unwrap();
    assert!((r.quantum - cf.quantum).abs() < 1e-3, "{} vs {}", r.quantum, cf.quantum);
}
