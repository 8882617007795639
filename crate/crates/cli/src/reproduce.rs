//! Canned runs regenerating plot data for the figures and the exponent table.

use serde_json::json;

use qcorr::correlation::OptimizerConfig;
use qcorr::entropy::{Family, Variety};
use qcorr::ising::ChainLength;
use qcorr::qpt::{fit_scaling, scaling_samples, sweep_discord, uniform_grid, ScalingConfig, ScalingTarget};
use qcorr::quadrature::QuadratureConfig;
use qcorr::EntropyKind;

use crate::args::{ReproduceArgs, StateFamily};
use crate::commands::family_curve;
use crate::error::CliError;
use crate::output::{num, Report, Table};

pub const FAMILY_ALPHAS: [f64; 5] = [0.5, 0.7, 2.0, 5.0, 10.0];
pub const FAMILY_POINTS: usize = 51;
pub const ISING_ALPHAS: [f64; 5] = [0.5, 2.0, 5.0, 10.0, 50.0];
/// `λ` grid of the infinite-chain figure: `MIN:MAX:STEPS`.
pub const ISING_GRID: (f64, f64, usize) = (0.05, 3.0, 60);
pub const TABLE_ALPHAS: [f64; 3] = [2.0, 10.0, 50.0];

/// Reference `λ_c^N` exponents the table is compared against, per family and
/// order.
pub fn reference_exponent(family: Family, alpha: f64) -> Option<f64> {
    let table = [
        (Family::Renyi, 2.0, -3.45),
        (Family::Renyi, 10.0, -1.28),
        (Family::Renyi, 50.0, -1.25),
        (Family::Tsallis, 2.0, -3.74),
        (Family::Tsallis, 10.0, -0.87),
        (Family::Tsallis, 50.0, -2.74),
    ];
    table
        .iter()
        .find(|(f, a, _)| *f == family && *a == alpha)
        .map(|&(_, _, e)| e)
}

pub fn run(a: &ReproduceArgs, seed: u64) -> Result<Report, CliError> {
    match (a.figure.as_deref(), a.table.as_deref()) {
        (Some("1"), _) => family_figure(StateFamily::Pure, seed),
        (Some("3"), _) => family_figure(StateFamily::Werner, seed),
        (Some("4"), _) => family_figure(StateFamily::Bellmix, seed),
        (Some("5"), _) => family_figure(StateFamily::Bellnoise, seed),
        (Some("8"), _) => ising_figure(seed),
        (None, Some("1")) => exponent_table(seed),
        _ => Err(CliError::Usage("give --figure {1,3,4,5,8} or --table 1".into())),
    }
}

fn family_figure(family: StateFamily, seed: u64) -> Result<Report, CliError> {
    let cfg = OptimizerConfig {
        seed,
        ..OptimizerConfig::default()
    };
    let params = uniform_grid(0.0, 1.0, FAMILY_POINTS)?;
    let mut table = Table::new(&["kind", "alpha", "param", "I", "J", "D"]);
    for &alpha in &FAMILY_ALPHAS {
        let k = EntropyKind::renyi(alpha)?;
        let results = family_curve(family, &params, &k, &cfg)?;
        for (&p, r) in params.iter().zip(&results) {
            table.push(vec![
                k.cli_name(),
                num(alpha),
                num(p),
                num(r.total),
                num(r.classical),
                num(r.quantum),
            ]);
        }
    }
    Ok(Report {
        payload: json!({ "family": family, "optimizer": cfg, "rows": table.rows.len() }),
        table: Some(table),
    })
}

fn ising_figure(seed: u64) -> Result<Report, CliError> {
    let cfg = OptimizerConfig {
        seed,
        ..OptimizerConfig::sweep()
    };
    let (lo, hi, steps) = ISING_GRID;
    let lambdas = uniform_grid(lo, hi, steps)?;
    let q = QuadratureConfig::default();
    let mut table = Table::new(&["kind", "alpha", "lambda", "D"]);
    for &alpha in &ISING_ALPHAS {
        let k = EntropyKind::renyi(alpha)?;
        let curve = sweep_discord(&lambdas, ChainLength::Infinite, &k, &cfg, &q)?;
        for (x, d) in curve.points() {
            table.push(vec![k.cli_name(), num(alpha), num(x), num(d)]);
        }
    }
    Ok(Report {
        payload: json!({ "n_sites": ChainLength::Infinite, "optimizer": cfg, "rows": table.rows.len() }),
        table: Some(table),
    })
}

fn exponent_table(seed: u64) -> Result<Report, CliError> {
    let cfg = OptimizerConfig {
        seed,
        ..OptimizerConfig::sweep()
    };
    let sc = ScalingConfig::default();
    let q = QuadratureConfig::default();
    let mut table = Table::new(&["family", "alpha", "exponent", "r_squared", "reference"]);
    let mut fits = Vec::new();
    for family in [Family::Renyi, Family::Tsallis] {
        for &alpha in &TABLE_ALPHAS {
            let k = EntropyKind::new(family, Variety::Sandwiched, alpha)?;
            let samples: Vec<_> = scaling_samples(&sc, &k, &cfg, &q)?
                .into_iter()
                .map(|(s, _)| s)
                .collect();
            let fit = fit_scaling(&samples, ScalingTarget::LambdaC);
            let reference = reference_exponent(family, alpha).map(num).unwrap_or_default();
            let (exponent, r2) = match &fit {
                Ok(f) => (num(f.exponent), num(f.r_squared)),
                Err(_) => (String::new(), String::new()),
            };
            table.push(vec![k.cli_name(), num(alpha), exponent, r2, reference]);
            fits.push(json!({
                "kind": k,
                "samples": samples,
                "fit": fit.as_ref().ok(),
                "fit_error": fit.as_ref().err().map(|e| e.to_string()),
            }));
        }
    }
    Ok(Report {
        payload: json!({ "scaling": sc, "optimizer": cfg, "fits": fits }),
        table: Some(table),
    })
}
