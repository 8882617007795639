use rayon::prelude::*;
use serde_json::{json, Value};

use qcorr::correlation::{quantum_correlation, OptimizerConfig};
use qcorr::entropy::relative_entropy;
use qcorr::io::{read_state, StateFile};
use qcorr::ising::IsingPoint;
use qcorr::qpt::{derivative, fit_scaling, locate_peak, scaling_samples, sweep_discord, uniform_grid, ScalingConfig};
use qcorr::quadrature::QuadratureConfig;
use qcorr::{CorrelationResult, DensityMatrix, EntropyKind};

use crate::args::{
    DiscordArgs, EntropyArgs, GridSpec, IsingStateArgs, IsingSweepArgs, KindArgs, ScalingArgs, StateFamily, SweepArgs,
};
use crate::error::CliError;
use crate::output::{num, Report, Table};

pub fn kind(k: &KindArgs) -> Result<EntropyKind, CliError> {
    EntropyKind::parse(&k.kind, k.alpha).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn grid(g: &GridSpec) -> Result<Vec<f64>, CliError> {
    uniform_grid(g.min, g.max, g.steps).map_err(|e| CliError::Usage(e.to_string()))
}

fn check_param(name: &str, p: f64) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Usage(format!("{name} = {p} must lie in [0, 1]")));
    }
    Ok(())
}

fn check_lambda_grid(g: &GridSpec) -> Result<(), CliError> {
    if !(g.min > 0.0) || g.max > 3.0 {
        return Err(CliError::Usage(format!("lambda grid {g} must lie inside (0, 3]")));
    }
    Ok(())
}

fn correlation_row(param: Option<f64>, r: &CorrelationResult) -> Vec<String> {
    vec![
        param.map(num).unwrap_or_default(),
        num(r.total),
        num(r.classical),
        num(r.quantum),
    ]
}

pub fn entropy(a: &EntropyArgs) -> Result<Report, CliError> {
    let k = kind(&a.kind)?;
    let rho: DensityMatrix = read_state(&a.rho)?;
    let sigma: DensityMatrix = read_state(&a.sigma)?;
    let v = relative_entropy(&rho, &sigma, &k)?;
    let mut table = Table::new(&["kind", "value"]);
    table.push(vec![k.to_string(), v.finite().map(num).unwrap_or_else(|| "inf".into())]);
    Ok(Report {
        payload: json!({ "kind": k, "value": v }),
        table: Some(table),
    })
}

pub fn discord(a: &DiscordArgs, seed: u64) -> Result<Report, CliError> {
    let k = kind(&a.kind)?;
    let cfg = a.optimizer.config(OptimizerConfig::default(), seed);
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let (rho, param) = match (&a.state, a.family, a.param) {
        (Some(path), _, _) => (read_state(path)?, None),
        (None, Some(f), Some(p)) => {
            check_param("--param", p)?;
            (f.state(p), Some(p))
        }
        _ => return Err(CliError::Usage("give --state FILE or --family F --param P".into())),
    };
    let r = quantum_correlation(&rho, &k, &cfg)?;
    let mut table = Table::new(&["param", "I", "J", "D"]);
    table.push(correlation_row(param, &r));
    Ok(Report {
        payload: json!({ "family": a.family, "param": param, "result": r }),
        table: Some(table),
    })
}

/// Correlations of `family` at every grid value, evaluated independently.
pub fn family_curve(
    family: StateFamily,
    params: &[f64],
    k: &EntropyKind,
    cfg: &OptimizerConfig,
) -> Result<Vec<CorrelationResult>, CliError> {
    params
        .par_iter()
        .map(|&p| quantum_correlation(&family.state(p), k, cfg).map_err(CliError::from))
        .collect()
}

pub fn sweep(a: &SweepArgs, seed: u64) -> Result<Report, CliError> {
    let k = kind(&a.kind)?;
    let cfg = a.optimizer.config(OptimizerConfig::default(), seed);
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    check_param("grid minimum", a.param_grid.min)?;
    check_param("grid maximum", a.param_grid.max)?;
    let params = grid(&a.param_grid)?;
    let results = family_curve(a.family, &params, &k, &cfg)?;
    let mut table = Table::new(&["param", "I", "J", "D"]);
    for (&p, r) in params.iter().zip(&results) {
        table.push(correlation_row(Some(p), r));
    }
    Ok(Report {
        payload: json!({ "family": a.family, "params": params, "results": results }),
        table: Some(table),
    })
}

pub fn ising_state(a: &IsingStateArgs) -> Result<Report, CliError> {
    let point = IsingPoint::new(a.lambda, a.n).map_err(|e| CliError::Usage(e.to_string()))?;
    let q = QuadratureConfig::default();
    let c = point.correlators(&q)?;
    let rho = point.state(&q)?;
    let mut table = Table::new(&["lambda", "n", "t_xx", "t_yy", "t_zz", "m_z"]);
    table.push(vec![
        num(a.lambda),
        a.n.to_string(),
        num(c.t_xx),
        num(c.t_yy),
        num(c.t_zz),
        num(c.m_z),
    ]);
    Ok(Report {
        payload: json!({ "point": point, "correlators": c, "state": StateFile::from_state(&rho) }),
        table: Some(table),
    })
}

pub fn ising_sweep(a: &IsingSweepArgs, seed: u64) -> Result<Report, CliError> {
    let k = kind(&a.kind)?;
    check_lambda_grid(&a.lambda)?;
    let cfg = a.optimizer.config(OptimizerConfig::sweep(), seed);
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let lambdas = grid(&a.lambda)?;
    let q = QuadratureConfig::default();
    let curve = sweep_discord(&lambdas, a.n, &k, &cfg, &q)?;
    let slope = derivative(&curve)?;
    let peak = locate_peak(&slope).ok();
    let vn = if a.compare_vn {
        let c = sweep_discord(&lambdas, a.n, &EntropyKind::von_neumann(), &cfg, &q)?;
        let d = derivative(&c)?;
        Some((c, d))
    } else {
        None
    };
    let mut header = vec!["lambda", "D", "dD_dlambda"];
    if vn.is_some() {
        header.extend(["D_vn", "dD_vn_dlambda"]);
    }
    let mut table = Table::new(&header);
    for i in 0..lambdas.len() {
        let mut row = vec![num(lambdas[i]), num(curve.values[i]), num(slope.values[i])];
        if let Some((c, d)) = &vn {
            row.extend([num(c.values[i]), num(d.values[i])]);
        }
        table.push(row);
    }
    let payload = json!({
        "curve": curve,
        "derivative": slope,
        "peak": peak.map(|(x, h)| json!({ "lambda": x, "height": h })),
        "von_neumann": vn.as_ref().map(|(c, d)| json!({ "curve": c, "derivative": d })),
    });
    Ok(Report {
        payload,
        table: Some(table),
    })
}

pub fn scaling(a: &ScalingArgs, seed: u64) -> Result<Report, CliError> {
    let k = kind(&a.kind)?;
    check_lambda_grid(&a.lambda)?;
    let cfg = a.optimizer.config(OptimizerConfig::sweep(), seed);
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    for &n in &a.n_list {
        IsingPoint::new(1.0, qcorr::ising::ChainLength::Finite(n)).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let sc = ScalingConfig {
        lambda_min: a.lambda.min,
        lambda_max: a.lambda.max,
        steps: a.lambda.steps,
        sizes: a.n_list.clone(),
        refine_points: a.refine_points,
    };
    let samples: Vec<_> = scaling_samples(&sc, &k, &cfg, &QuadratureConfig::default())?
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    let (fit, fit_error) = match fit_scaling(&samples, a.target) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let mut table = Table::new(&["n_sites", "lambda_c_n", "delta_n", "peak_height"]);
    for s in &samples {
        table.push(vec![
            s.n_sites.to_string(),
            num(s.lambda_c_n),
            num(s.delta_n),
            num(s.peak_height),
        ]);
    }
    let payload: Value = json!({
        "kind": k,
        "target": a.target,
        "samples": samples,
        "fit": fit,
        "fit_error": fit_error,
    });
    Ok(Report {
        payload,
        table: Some(table),
    })
}
