//! Correlation sweeps across the Ising critical point and their finite-size
//! scaling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{quantum_correlation_warm, OptimizerConfig, WarmStart};
use crate::entropy::EntropyKind;
use crate::error::{Error, Result};
use crate::ising::{ChainLength, IsingPoint};
use crate::quadrature::QuadratureConfig;
use crate::scalar::Real;

/// Relative tolerance on grid uniformity.
pub const GRID_UNIFORMITY_TOL: f64 = 1e-9;
/// Fits below this r² are rejected outright.
pub const MIN_FIT_R_SQUARED: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta<T: Real> {
    pub kind: EntropyKind<T>,
    pub n_sites: ChainLength,
    pub seed: u64,
    pub spacing: T,
    /// How many times the curve has been differentiated.
    pub derivative_order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCurve<T: Real> {
    pub lambdas: Vec<T>,
    pub values: Vec<T>,
    pub meta: SweepMeta<T>,
}

impl<T: Real> SweepCurve<T> {
    pub fn new(lambdas: Vec<T>, values: Vec<T>, meta: SweepMeta<T>) -> Result<Self> {
        if lambdas.len() != values.len() {
            return Err(Error::DimensionMismatch(lambdas.len(), values.len()));
        }
        check_uniform(&lambdas)?;
        Ok(SweepCurve { lambdas, values, meta })
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.lambdas.iter().copied().zip(self.values.iter().copied())
    }
}

fn check_uniform<T: Real>(grid: &[T]) -> Result<()> {
    if grid.len() < 2 {
        return Ok(());
    }
    let h = grid[1] - grid[0];
    if !(h > T::zero()) {
        return Err(Error::InvalidArgument("grid must be strictly increasing".into()));
    }
    let tol = h * T::lit(GRID_UNIFORMITY_TOL);
    for w in grid.windows(2) {
        if ((w[1] - w[0]) - h).abs() > tol {
            return Err(Error::InvalidArgument("grid spacing is not uniform".into()));
        }
    }
    Ok(())
}

/// `steps` equally spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid<T: Real>(lo: T, hi: T, steps: usize) -> Result<Vec<T>> {
    if steps < 2 || !(hi > lo) {
        return Err(Error::InvalidArgument(format!(
            "grid {}:{}:{steps} needs lo < hi and at least 2 points",
            lo.as_f64(),
            hi.as_f64()
        )));
    }
    let h = (hi - lo) / T::from_usize(steps - 1).expect("small");
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + h * T::from_usize(i).expect("small")
            }
        })
        .collect())
}

fn spacing<T: Real>(grid: &[T]) -> T {
    if grid.len() < 2 {
        T::zero()
    } else {
        (grid[grid.len() - 1] - grid[0]) / T::from_usize(grid.len() - 1).expect("small")
    }
}

/// `D(λ)` of the nearest-neighbour state along `grid`, each point warm-started
/// from the optima of the previous one.
pub fn sweep_discord<T: Real>(
    grid: &[T],
    n_sites: ChainLength,
    kind: &EntropyKind<T>,
    cfg: &OptimizerConfig,
    q: &QuadratureConfig,
) -> Result<SweepCurve<T>> {
    check_uniform(grid)?;
    let mut warm = WarmStart::default();
    let mut values = Vec::with_capacity(grid.len());
    for &lambda in grid {
        let rho = IsingPoint::new(lambda, n_sites)?.state(q)?;
        let r = quantum_correlation_warm(&rho, kind, cfg, &warm)?;
        warm = WarmStart::from_result(&r);
        values.push(r.quantum);
    }
    let meta = SweepMeta {
        kind: *kind,
        n_sites,
        seed: cfg.seed,
        spacing: spacing(grid),
        derivative_order: 0,
    };
    SweepCurve::new(grid.to_vec(), values, meta)
}

/// Central differences inside, one-sided differences at both ends.
pub fn derivative<T: Real>(curve: &SweepCurve<T>) -> Result<SweepCurve<T>> {
    let n = curve.len();
    if n < 3 {
        return Err(Error::TooFewPoints { got: n, need: 3 });
    }
    let (x, y) = (&curve.lambdas, &curve.values);
    let mut d = Vec::with_capacity(n);
    d.push((y[1] - y[0]) / (x[1] - x[0]));
    for i in 1..n - 1 {
        d.push((y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]));
    }
    d.push((y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]));
    let meta = SweepMeta {
        derivative_order: curve.meta.derivative_order + 1,
        ..curve.meta
    };
    SweepCurve::new(x.clone(), d, meta)
}

/// Indices of interior samples strictly above their left neighbour and not
/// below their right one.
pub fn interior_peaks<T: Real>(curve: &SweepCurve<T>) -> Vec<usize> {
    let y = &curve.values;
    (1..y.len().saturating_sub(1))
        .filter(|&i| y[i] > y[i - 1] && y[i] >= y[i + 1])
        .collect()
}

fn top_peak<T: Real>(curve: &SweepCurve<T>) -> Result<usize> {
    if curve.len() < 3 {
        return Err(Error::TooFewPoints {
            got: curve.len(),
            need: 3,
        });
    }
    let y = &curve.values;
    interior_peaks(curve)
        .into_iter()
        .fold(None, |best: Option<usize>, i| match best {
            Some(b) if y[b] >= y[i] => Some(b),
            _ => Some(i),
        })
        .ok_or(Error::NoInteriorPeak)
}

/// Location and height of the highest interior local maximum, refined by the
/// parabola through it and its neighbours.
pub fn locate_peak<T: Real>(curve: &SweepCurve<T>) -> Result<(T, T)> {
    let i = top_peak(curve)?;
    let y = &curve.values;
    let (y0, y1, y2) = (y[i - 1], y[i], y[i + 1]);
    let h = curve.lambdas[i] - curve.lambdas[i - 1];
    let curv = y0 - y1 - y1 + y2;
    if !(curv < T::zero()) {
        return Ok((curve.lambdas[i], y1));
    }
    let half = T::lit(0.5);
    let shift = half * (y0 - y2) / curv;
    Ok((
        curve.lambdas[i] + shift * h,
        y1 - T::lit(0.125) * (y2 - y0) * (y2 - y0) / curv,
    ))
}

/// Full width at half of the peak height, with each flank crossing found by
/// linear interpolation.
pub fn fwhm<T: Real>(curve: &SweepCurve<T>) -> Result<T> {
    let (_, height) = locate_peak(curve)?;
    let (x, y) = (&curve.lambdas, &curve.values);
    let half = T::lit(0.5) * height;
    let top = top_peak(curve)?;
    let cross = |a: usize, b: usize| x[a] + (half - y[a]) * (x[b] - x[a]) / (y[b] - y[a]);
    let left = (1..=top).rev().find(|&i| y[i - 1] < half).map(|i| cross(i - 1, i));
    let right = (top..y.len() - 1).find(|&i| y[i + 1] < half).map(|i| cross(i, i + 1));
    match (left, right) {
        (Some(l), Some(r)) => Ok(r - l),
        _ => Err(Error::HalfHeightNotBracketed),
    }
}

/// Peak statistics of `dD/dλ` for one ring length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingSample<T> {
    pub n_sites: usize,
    pub lambda_c_n: T,
    pub delta_n: T,
    pub peak_height: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalingTarget {
    /// `δ_N`, the width of the derivative peak.
    Fwhm,
    /// `|λ_c^N − 1|`, the distance of the peak from the critical point.
    LambdaC,
}

impl ScalingTarget {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fwhm" => Ok(ScalingTarget::Fwhm),
            "lambda-c" | "lambda_c" => Ok(ScalingTarget::LambdaC),
            _ => Err(Error::InvalidArgument(format!("unknown scaling target {s:?}"))),
        }
    }

    fn observable<T: Real>(&self, s: &ScalingSample<T>) -> T {
        match self {
            ScalingTarget::Fwhm => s.delta_n,
            ScalingTarget::LambdaC => (s.lambda_c_n - T::one()).abs(),
        }
    }
}

/// Power law `y = 2^intercept · n^exponent` fitted in log₂–log₂ space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit<T> {
    pub exponent: T,
    pub intercept: T,
    pub r_squared: T,
    pub samples_used: Vec<usize>,
}

impl<T: Real> ScalingFit<T> {
    pub fn accepted(&self, min_r_squared: f64) -> bool {
        self.r_squared.as_f64() >= min_r_squared
    }
}

/// Least-squares slope of `log₂ y` against `log₂ n`.
pub fn fit_scaling<T: Real>(samples: &[ScalingSample<T>], target: ScalingTarget) -> Result<ScalingFit<T>> {
    if samples.len() < 4 {
        return Err(Error::TooFewPoints {
            got: samples.len(),
            need: 4,
        });
    }
    let mut ns: Vec<usize> = samples.iter().map(|s| s.n_sites).collect();
    ns.sort_unstable();
    if ns.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("scaling samples need distinct sizes".into()));
    }
    let mut pts = Vec::with_capacity(samples.len());
    for s in samples {
        let y = target.observable(s).as_f64();
        if !(y > 0.0) || !y.is_finite() {
            return Err(Error::DegenerateFit(0.0));
        }
        pts.push(((s.n_sites as f64).log2(), y.log2()));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    if r_squared < MIN_FIT_R_SQUARED {
        return Err(Error::DegenerateFit(r_squared));
    }
    Ok(ScalingFit {
        exponent: T::lit(slope),
        intercept: T::lit(intercept),
        r_squared: T::lit(r_squared),
        samples_used: samples.iter().map(|s| s.n_sites).collect(),
    })
}

/// Grid and ring sizes for a scaling run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingConfig {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub steps: usize,
    pub sizes: Vec<usize>,
    /// Points in the second sweep spanning two coarse steps either side of the
    /// coarse peak; `0` keeps the coarse `λ_c^N`.
    pub refine_points: usize,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        ScalingConfig {
            lambda_min: 0.8,
            lambda_max: 1.2,
            steps: 401,
            sizes: vec![64, 128, 256, 512, 1024, 2048, 4096],
            refine_points: 81,
        }
    }
}

/// Sweeps one finite ring and summarizes the peak of `dD/dλ`. The width and
/// height come from `grid`; with `refine_points > 0` the peak location is
/// re-measured on a finer grid around the coarse maximum.
pub fn scaling_sample<T: Real>(
    n_sites: usize,
    grid: &[T],
    refine_points: usize,
    kind: &EntropyKind<T>,
    cfg: &OptimizerConfig,
    q: &QuadratureConfig,
) -> Result<(ScalingSample<T>, SweepCurve<T>)> {
    let ring = ChainLength::Finite(n_sites);
    let curve = sweep_discord(grid, ring, kind, cfg, q)?;
    let d = derivative(&curve)?;
    let (mut lambda_c_n, peak_height) = locate_peak(&d)?;
    let delta_n = fwhm(&d)?;
    if refine_points > 0 {
        let reach = T::lit(2.0) * curve.meta.spacing;
        let fine = uniform_grid(lambda_c_n - reach, lambda_c_n + reach, refine_points)?;
        let zoom = derivative(&sweep_discord(&fine, ring, kind, cfg, q)?)?;
        lambda_c_n = locate_peak(&zoom)?.0;
    }
    Ok((
        ScalingSample {
            n_sites,
            lambda_c_n,
            delta_n,
            peak_height,
        },
        curve,
    ))
}

/// [`scaling_sample`] for every size in `sc`, run in parallel.
pub fn scaling_samples<T: Real>(
    sc: &ScalingConfig,
    kind: &EntropyKind<T>,
    cfg: &OptimizerConfig,
    q: &QuadratureConfig,
) -> Result<Vec<(ScalingSample<T>, SweepCurve<T>)>> {
    let grid = uniform_grid(T::lit(sc.lambda_min), T::lit(sc.lambda_max), sc.steps)?;
    sc.sizes
        .par_iter()
        .map(|&n| scaling_sample(n, &grid, sc.refine_points, kind, cfg, q))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> SweepMeta<f64> {
        SweepMeta {
            kind: EntropyKind::renyi(2.0).unwrap(),
            n_sites: ChainLength::Infinite,
            seed: 0,
            spacing: 0.0,
            derivative_order: 0,
        }
    }

    fn synthetic(grid: Vec<f64>, f: impl Fn(f64) -> f64) -> SweepCurve<f64> {
        let v = grid.iter().map(|&x| f(x)).collect();
        SweepCurve::new(grid, v, meta()).unwrap()
    }

    #[test]
    fn grid_construction() {
        let g = uniform_grid(0.8f64, 1.2, 401).unwrap();
        assert_eq!(g.len(), 401);
        assert_eq!(g[400], 1.2);
        assert!((g[200] - 1.0).abs() < 1e-15);
        assert!(uniform_grid(1.0f64, 1.0, 3).is_err());
        assert!(SweepCurve::new(vec![0.0, 1.0, 3.0], vec![0.0; 3], meta()).is_err());
        assert!(SweepCurve::new(vec![0.0, 1.0], vec![0.0; 3], meta()).is_err());
    }

    #[test]
    fn derivative_of_elementary_curves() {
        let g = uniform_grid(0.0, 2.0, 21).unwrap();
        let c = derivative(&synthetic(g.clone(), |_| 3.0)).unwrap();
        assert!(c.values.iter().all(|&v| v == 0.0));
        let c = derivative(&synthetic(g, |x| 1.5 * x - 2.0)).unwrap();
        assert!(c.values.iter().all(|&v| (v - 1.5).abs() < 1e-12));
        assert_eq!(c.meta.derivative_order, 1);
        let short = synthetic(vec![0.0, 1.0], |x| x);
        assert!(matches!(derivative(&short), Err(Error::TooFewPoints { got: 2, .. })));
    }

    #[test]
    fn cumulative_sum_round_trip() {
        let g = uniform_grid(0.0, 1.0, 101).unwrap();
        let c = synthetic(g.clone(), |x| (3.0 * x).sin() + x * x);
        let d = derivative(&c).unwrap();
        let h = g[1] - g[0];
        let mut y = vec![c.values[0], c.values[0] + h * d.values[0]];
        for i in 1..g.len() - 1 {
            y.push(y[i - 1] + 2.0 * h * d.values[i]);
        }
        for (a, b) in y.iter().zip(&c.values) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn triangle_peak() {
        let g = uniform_grid(-2.0, 2.0, 41).unwrap();
        let c = synthetic(g, |x| (1.0 - x.abs()).max(0.0));
        let (x, h) = locate_peak(&c).unwrap();
        assert!(x.abs() < 1e-12 && (h - 1.0).abs() < 1e-12);
        assert!((fwhm(&c).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_peak_and_width() {
        let sigma = 0.1;
        let centre = 0.5123;
        let g = uniform_grid(0.0, 1.0, 201).unwrap();
        let c = synthetic(g, |x| (-(x - centre).powi(2) / (2.0 * sigma * sigma)).exp());
        let (x, _) = locate_peak(&c).unwrap();
        assert!((x - centre).abs() < 0.005f64.powi(2));
        let fine = synthetic(uniform_grid(0.0, 1.0, 401).unwrap(), |x| {
            (-(x - centre).powi(2) / (2.0 * sigma * sigma)).exp()
        });
        let w = fwhm(&fine).unwrap();
        assert!((w / (2.354_820_045 * sigma) - 1.0).abs() < 0.01);
    }

    #[test]
    fn peak_errors() {
        let g = uniform_grid(0.0, 1.0, 11).unwrap();
        assert!(matches!(
            locate_peak(&synthetic(g.clone(), |x| x)),
            Err(Error::NoInteriorPeak)
        ));
        let shoulder = synthetic(g, |x| 1.0 - 0.1 * (x - 0.3).powi(2));
        assert!(matches!(fwhm(&shoulder), Err(Error::HalfHeightNotBracketed)));
    }

    #[test]
    fn edge_maximum_is_skipped_for_interior_bump() {
        let g = uniform_grid(0.0, 1.0, 101).unwrap();
        let c = synthetic(g, |x| {
            1.5 * (1.0 - x).powi(4) + 0.5 * (-(x - 0.6f64).powi(2) / 0.002).exp()
        });
        assert_eq!(interior_peaks(&c).len(), 1);
        let (x, h) = locate_peak(&c).unwrap();
        assert!((x - 0.6).abs() < 0.02, "{x}");
        assert!(h > 0.5 && h < 0.6);
        assert!(fwhm(&c).unwrap() > 0.0);
    }

    #[test]
    fn highest_of_several_bumps_wins() {
        let g = uniform_grid(0.0, 1.0, 201).unwrap();
        let bump = |x: f64, c: f64| (-(x - c).powi(2) / 0.001).exp();
        let c = synthetic(g, |x| 0.5 * bump(x, 0.25) + bump(x, 0.7));
        assert_eq!(interior_peaks(&c).len(), 2);
        assert!((locate_peak(&c).unwrap().0 - 0.7).abs() < 1e-3);
    }

    #[test]
    fn infinite_chain_peak_sits_at_the_critical_point() {
        let cfg = OptimizerConfig::sweep();
        let grid = uniform_grid(0.9f64, 1.1, 21).unwrap();
        let kind = EntropyKind::renyi(2.0).unwrap();
        let c = sweep_discord(&grid, ChainLength::Infinite, &kind, &cfg, &QuadratureConfig::default()).unwrap();
        let d = derivative(&c).unwrap();
        assert_eq!(interior_peaks(&d).len(), 1);
        assert!((locate_peak(&d).unwrap().0 - 1.0).abs() < 0.01);
        assert_eq!(d.meta.derivative_order, 1);
        assert!((d.meta.spacing - 0.01).abs() < 1e-12);
    }

    #[test]
    fn exact_power_law_fit() {
        let samples: Vec<ScalingSample<f64>> = [64usize, 128, 256, 512, 1024]
            .iter()
            .map(|&n| ScalingSample {
                n_sites: n,
                lambda_c_n: 1.0 - 2.0 * (n as f64).powf(-1.5),
                delta_n: 0.7 * (n as f64).powf(-0.36),
                peak_height: 1.0,
            })
            .collect();
        let f = fit_scaling(&samples, ScalingTarget::Fwhm).unwrap();
        assert!((f.exponent + 0.36).abs() < 1e-6 && (f.r_squared - 1.0).abs() < 1e-12);
        assert!((f.intercept - 0.7f64.log2()).abs() < 1e-9);
        let f = fit_scaling(&samples, ScalingTarget::LambdaC).unwrap();
        assert!((f.exponent + 1.5).abs() < 1e-6);
        assert!(matches!(
            fit_scaling(&samples[..3], ScalingTarget::Fwhm),
            Err(Error::TooFewPoints { got: 3, need: 4 })
        ));
    }

    #[test]
    fn noisy_fit_is_rejected() {
        let samples: Vec<ScalingSample<f64>> = [64usize, 128, 256, 512]
            .iter()
            .zip([1.0, 0.1, 1.0, 0.1])
            .map(|(&n, y)| ScalingSample {
                n_sites: n,
                lambda_c_n: 1.0,
                delta_n: y,
                peak_height: 1.0,
            })
            .collect();
        assert!(matches!(
            fit_scaling(&samples, ScalingTarget::Fwhm),
            Err(Error::DegenerateFit(_))
        ));
    }
}
