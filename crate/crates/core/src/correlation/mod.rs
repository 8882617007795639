//! Total, classical and quantum correlations of two-qubit states measured by a
//! relative entropy, by optimization over product states and measurements.
//!
//! * total `I(ρ) = min S(ρ ‖ σ_A ⊗ σ_B)`
//! * classical `J(ρ) = max_{P} min S(ρ' ‖ σ_A ⊗ σ_B)` with `ρ' = Σ (I ⊗ P_i) ρ (I ⊗ P_i)`
//! * quantum `D = I - J`
//!
//! Inside the data-processing range the inner minimization of `J` uses that
//! `σ_B` may be taken diagonal in the measured basis; its weights then follow
//! in closed form, leaving a search over `σ_A` alone. Outside it the full
//! product space is searched.

mod closed_form;
mod objective;

pub use closed_form::{
    bell_mixture_closed_form, pure_closed_form, pure_total_closed_form, werner_anomaly_scan, werner_closed_form,
    AnomalyPeak,
};

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::entropy::{shannon_bits, EntropyKind, ExtendedReal, Family};
use crate::error::{Error, Result};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::qstate::{apply_pvm_on_b, seeded_rng, ComplexMatrix, DensityMatrix, ProjectiveMeasurement};
use crate::scalar::Real;
use crate::states::bloch_matrix;

use objective::{marginal_blochs, to_m4, Functional, MeasuredBlocks, TotalObjective, M4};

/// Bloch vectors are kept at norm `≤ 1 - BLOCH_MARGIN` so every `σ` is full rank.
pub const BLOCH_MARGIN: f64 = 1e-6;
/// Negative discord down to this magnitude is optimizer noise and clamped to 0.
pub const DISCORD_CLAMP: f64 = 1e-7;

/// A product state `σ_A ⊗ σ_B` given by its two Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductAnsatz<T> {
    pub bloch_a: [T; 3],
    pub bloch_b: [T; 3],
}

impl<T: Real> ProductAnsatz<T> {
    pub fn new(bloch_a: [T; 3], bloch_b: [T; 3]) -> Self {
        ProductAnsatz {
            bloch_a: clip(bloch_a),
            bloch_b: clip(bloch_b),
        }
    }

    pub fn maximally_mixed() -> Self {
        ProductAnsatz {
            bloch_a: [T::zero(); 3],
            bloch_b: [T::zero(); 3],
        }
    }

    /// `ρ_A ⊗ ρ_B` of a two-qubit state.
    pub fn marginals_of(rho: &DensityMatrix<T>) -> Self {
        let [a, b] = marginal_blochs(&to_m4(rho));
        Self::new(a, b)
    }

    pub fn sigma_a(&self) -> ComplexMatrix<T> {
        bloch_matrix(self.bloch_a)
    }

    pub fn sigma_b(&self) -> ComplexMatrix<T> {
        bloch_matrix(self.bloch_b)
    }

    pub fn state(&self) -> DensityMatrix<T> {
        let a = DensityMatrix::single(self.sigma_a()).expect("Bloch vector inside the ball");
        let b = DensityMatrix::single(self.sigma_b()).expect("Bloch vector inside the ball");
        DensityMatrix::product(&a, &b)
    }

    fn params(&self) -> [T; 6] {
        let a = chart_inverse(&self.bloch_a);
        let b = chart_inverse(&self.bloch_b);
        [a[0], a[1], a[2], b[0], b[1], b[2]]
    }

    fn from_params(u: &[T]) -> Self {
        ProductAnsatz {
            bloch_a: chart(&u[..3]),
            bloch_b: chart(&u[3..6]),
        }
    }
}

fn norm3<T: Real>(r: &[T]) -> T {
    (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt()
}

fn clip<T: Real>(r: [T; 3]) -> [T; 3] {
    let cap = T::one() - T::lit(BLOCH_MARGIN);
    let n = norm3(&r);
    if n > cap {
        r.map(|x| x * cap / n)
    } else {
        r
    }
}

/// Unconstrained coordinates onto the Bloch ball: `r = (1-δ) sin|u| û`.
fn chart<T: Real>(u: &[T]) -> [T; 3] {
    let cap = T::one() - T::lit(BLOCH_MARGIN);
    let n = norm3(u);
    if n < T::lit(1e-12) {
        return [u[0] * cap, u[1] * cap, u[2] * cap];
    }
    let k = cap * n.sin() / n;
    [u[0] * k, u[1] * k, u[2] * k]
}

fn chart_inverse<T: Real>(r: &[T; 3]) -> [T; 3] {
    let cap = T::one() - T::lit(BLOCH_MARGIN);
    let n = norm3(r);
    if n < T::lit(1e-12) {
        return r.map(|x| x / cap);
    }
    let k = (n / cap).min(T::one()).asin() / n;
    r.map(|x| x * k)
}

fn random_bloch<T: Real, R: Rng>(rng: &mut R) -> [T; 3] {
    let g: [f64; 3] = [
        StandardNormal.sample(rng),
        StandardNormal.sample(rng),
        StandardNormal.sample(rng),
    ];
    let n = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt().max(1e-300);
    let radius = rng.random::<f64>().cbrt() * (1.0 - BLOCH_MARGIN);
    g.map(|x| T::lit(x / n * radius))
}

/// Settings shared by every optimizer in this module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Local searches per minimization, including the two deterministic seeds.
    pub starts: usize,
    pub max_iters: usize,
    pub objective_tol: f64,
    pub simplex_scale: f64,
    pub seed: u64,
    /// Grid points per measurement angle.
    pub measurement_grid: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            starts: 64,
            max_iters: 2000,
            objective_tol: 1e-9,
            simplex_scale: 0.2,
            seed: 0,
            measurement_grid: 24,
        }
    }
}

impl OptimizerConfig {
    /// Light multistart for sweeps, where every point is also seeded with the
    /// optima of its neighbour.
    pub fn sweep() -> Self {
        OptimizerConfig {
            starts: 4,
            measurement_grid: 6,
            ..OptimizerConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("optimizer {what} must be positive")));
        if self.starts == 0 {
            return bad("starts");
        }
        if self.max_iters == 0 {
            return bad("max_iters");
        }
        if !(self.objective_tol > 0.0) {
            return bad("objective_tol");
        }
        if !(self.simplex_scale > 0.0) {
            return bad("simplex_scale");
        }
        if self.measurement_grid < 2 {
            return Err(Error::InvalidArgument("measurement_grid must be at least 2".into()));
        }
        Ok(())
    }

    fn nm<T: Real>(&self, scale: f64) -> NelderMeadOptions<T> {
        NelderMeadOptions {
            max_iters: self.max_iters,
            tol: T::lit(self.objective_tol),
            simplex_scale: T::lit(scale),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics<T> {
    pub starts_converged: usize,
    pub starts_total: usize,
    /// `I - J` before clamping.
    pub raw_quantum: T,
    /// Classical correlation before clamping.
    pub raw_classical: T,
    /// The kind lies outside the range where the data-processing inequality is known.
    pub outside_dpi_range: bool,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult<T: Real> {
    pub total: T,
    pub classical: T,
    pub quantum: T,
    pub argmin_total: ProductAnsatz<T>,
    pub argmax_measurement: ProjectiveMeasurement<T>,
    pub argmin_post: ProductAnsatz<T>,
    pub kind: EntropyKind<T>,
    pub diagnostics: Diagnostics<T>,
}

/// Optima of nearby problems used as extra starting points.
#[derive(Debug, Clone)]
pub struct WarmStart<T: Real> {
    pub products: Vec<ProductAnsatz<T>>,
    pub measurements: Vec<ProjectiveMeasurement<T>>,
    pub post_products: Vec<ProductAnsatz<T>>,
}

impl<T: Real> Default for WarmStart<T> {
    fn default() -> Self {
        WarmStart {
            products: Vec::new(),
            measurements: Vec::new(),
            post_products: Vec::new(),
        }
    }
}

impl<T: Real> WarmStart<T> {
    pub fn from_result(r: &CorrelationResult<T>) -> Self {
        WarmStart {
            products: vec![r.argmin_total],
            measurements: vec![r.argmax_measurement],
            post_products: vec![r.argmin_post],
        }
    }
}

fn check_two_qubit<T: Real>(rho: &DensityMatrix<T>) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::InvalidArgument(format!(
            "two-qubit state required, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    converged: usize,
    runs: usize,
    evaluations: usize,
}

impl Tally {
    fn add(&mut self, other: Tally) {
        self.converged += other.converged;
        self.runs += other.runs;
        self.evaluations += other.evaluations;
    }

    fn require(&self) -> Result<()> {
        if self.converged < 2.min(self.runs) {
            return Err(Error::NoConvergence {
                converged: self.converged,
                starts: self.runs,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Optimum<T: Real> {
    value: T,
    ansatz: ProductAnsatz<T>,
}

/// Multistart minimization of `S(ρ ‖ σ_A ⊗ σ_B)` in Rényi units.
fn minimize_product<T: Real>(
    rho: &DensityMatrix<T>,
    functional: Functional<T>,
    cfg: &OptimizerConfig,
    seeds: &[ProductAnsatz<T>],
    random_starts: usize,
    rng_seed: u64,
) -> (Optimum<T>, Tally) {
    if functional == Functional::VonNeumann {
        let ansatz = ProductAnsatz::marginals_of(rho);
        let value = mutual_information(rho);
        return (
            Optimum { value, ansatz },
            Tally {
                converged: 1,
                runs: 1,
                evaluations: 0,
            },
        );
    }
    let obj = TotalObjective::new(rho, functional);
    let f = |u: &[T]| {
        let p = ProductAnsatz::from_params(u);
        obj.value(&p.bloch_a, &p.bloch_b)
    };
    let opts = cfg.nm::<T>(cfg.simplex_scale);
    let mut tally = Tally::default();
    let mut best: Option<Optimum<T>> = None;
    let run = |start: [T; 6], tally: &mut Tally, best: &mut Option<Optimum<T>>| {
        let m = nelder_mead(f, &start, &opts);
        tally.runs += 1;
        tally.evaluations += m.evaluations;
        tally.converged += usize::from(m.converged);
        if best.is_none_or(|b| m.value < b.value) {
            *best = Some(Optimum {
                value: m.value,
                ansatz: ProductAnsatz::from_params(&m.point),
            });
        }
    };
    for s in seeds {
        run(s.params(), &mut tally, &mut best);
    }
    let mut rng = seeded_rng(rng_seed);
    for _ in 0..random_starts {
        let p = ProductAnsatz::new(random_bloch(&mut rng), random_bloch(&mut rng));
        run(p.params(), &mut tally, &mut best);
    }
    let best = best.expect("at least one start");
    // Restarting from the optimum guards against a collapsed simplex.
    let polish = nelder_mead(f, &best.ansatz.params(), &cfg.nm::<T>(cfg.simplex_scale * 0.05));
    tally.evaluations += polish.evaluations;
    let best = if polish.value < best.value {
        Optimum {
            value: polish.value,
            ansatz: ProductAnsatz::from_params(&polish.point),
        }
    } else {
        best
    };
    (best, tally)
}

fn mutual_information<T: Real>(rho: &DensityMatrix<T>) -> T {
    let [a, b] = marginal_blochs(&to_m4(rho));
    let h = T::lit(0.5);
    let s = |r: [T; 3]| {
        let n = norm3(&r).min(T::one());
        shannon_bits(&[h * (T::one() + n), h * (T::one() - n)])
    };
    s(a) + s(b) - shannon_bits(&rho.eigenvalues())
}

/// Best inner value found for a measurement, with the `σ_A` that attains it.
#[derive(Debug, Clone, Copy)]
struct Scored<T: Real> {
    value: T,
    ansatz: ProductAnsatz<T>,
}

/// Inner problem of the classical correlation for a fixed measurement.
struct Inner<'a, T: Real> {
    rho: &'a DensityMatrix<T>,
    rho4: M4<T>,
    functional: Functional<T>,
    reduced: bool,
    cfg: &'a OptimizerConfig,
    marginal_a: [T; 3],
    entropy_a: T,
}

impl<'a, T: Real> Inner<'a, T> {
    fn new(rho: &'a DensityMatrix<T>, functional: Functional<T>, reduced: bool, cfg: &'a OptimizerConfig) -> Self {
        let rho4 = to_m4(rho);
        let marginal_a = clip(marginal_blochs(&rho4)[0]);
        let h = T::lit(0.5);
        let n = norm3(&marginal_a).min(T::one());
        Inner {
            rho,
            rho4,
            functional,
            reduced,
            cfg,
            marginal_a,
            entropy_a: shannon_bits(&[h * (T::one() + n), h * (T::one() - n)]),
        }
    }

    /// Minimizes over product states from the given `σ_A` seeds plus
    /// `random` random ones.
    fn score(
        &self,
        m: &ProjectiveMeasurement<T>,
        hints: &[ProductAnsatz<T>],
        random: usize,
        seed: u64,
        tally: &mut Tally,
    ) -> Scored<T> {
        let dir = m.direction();
        let blocks = MeasuredBlocks::new(&self.rho4, m, self.functional);
        let post_b = |blocks: &MeasuredBlocks<T>, a: &[T; 3]| {
            let [b0, b1] = blocks.b_weights(a);
            dir.map(|x| x * (b0 - b1))
        };
        if self.functional == Functional::VonNeumann {
            let outcomes = blocks.outcomes();
            let mut diag = [T::zero(); 2];
            for (i, (p, _)) in outcomes.iter().enumerate() {
                diag[i] = *p;
            }
            tally.runs += 1;
            tally.converged += 1;
            let value = self.entropy_a - blocks.conditional_entropy();
            let b = dir.map(|x| x * (diag[0] - diag[1]));
            return Scored {
                value,
                ansatz: ProductAnsatz::new(self.marginal_a, b),
            };
        }
        if !self.reduced {
            let post = apply_pvm_on_b(self.rho, m).expect("two-qubit state");
            let mut seeds = vec![ProductAnsatz::marginals_of(&post), ProductAnsatz::maximally_mixed()];
            seeds.extend_from_slice(hints);
            let (opt, t) = minimize_product(&post, self.functional, self.cfg, &seeds, random, seed);
            tally.add(t);
            return Scored {
                value: opt.value,
                ansatz: opt.ansatz,
            };
        }
        let f = |u: &[T]| blocks.value(&chart(u));
        let opts = self.cfg.nm::<T>(self.cfg.simplex_scale);
        let mut best: Option<(T, [T; 3])> = None;
        let mut consider = |start: [T; 3], tally: &mut Tally| {
            let r = nelder_mead(f, &chart_inverse(&start), &opts);
            tally.runs += 1;
            tally.evaluations += r.evaluations;
            tally.converged += usize::from(r.converged);
            if best.is_none_or(|b| r.value < b.0) {
                best = Some((r.value, chart(&r.point)));
            }
        };
        consider(self.marginal_a, tally);
        consider([T::zero(); 3], tally);
        for h in hints {
            consider(h.bloch_a, tally);
        }
        let mut rng = seeded_rng(seed);
        for _ in 0..random {
            consider(random_bloch(&mut rng), tally);
        }
        let (value, a) = best.expect("at least one start");
        Scored {
            value,
            ansatz: ProductAnsatz::new(a, post_b(&blocks, &a)),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct ClassicalOptimum<T: Real> {
    value: T,
    measurement: ProjectiveMeasurement<T>,
    ansatz: ProductAnsatz<T>,
}

/// Measurement search: hemisphere grid and coordinate axes, then local
/// refinement of the best candidates, then a full multistart of the inner
/// problem at the winner.
fn maximize_measurement<T: Real>(
    inner: &Inner<'_, T>,
    cfg: &OptimizerConfig,
    warm: &WarmStart<T>,
    tally: &mut Tally,
) -> ClassicalOptimum<T> {
    let g = cfg.measurement_grid;
    let pi = T::pi();
    let mut candidates: Vec<(T, ProjectiveMeasurement<T>, ProductAnsatz<T>)> = Vec::new();
    let mut hint: Vec<ProductAnsatz<T>> = warm.post_products.clone();
    let eval = |m: ProjectiveMeasurement<T>, hint: &mut Vec<ProductAnsatz<T>>, tally: &mut Tally| {
        let s = inner.score(&m, hint, 0, 0, tally);
        hint.truncate(warm.post_products.len());
        hint.push(s.ansatz);
        (s.value, m, s.ansatz)
    };
    let mut fixed = vec![
        ProjectiveMeasurement::z(),
        ProjectiveMeasurement::x(),
        ProjectiveMeasurement::y(),
    ];
    fixed.extend_from_slice(&warm.measurements);
    for m in fixed {
        candidates.push(eval(m, &mut hint, tally));
    }
    let n_fixed = candidates.len();
    for i in 1..g {
        let theta = pi * T::from_usize(i).expect("small") / T::from_usize(2 * (g - 1)).expect("small");
        for j in 0..g {
            let phi = T::two_pi() * T::from_usize(j).expect("small") / T::from_usize(g).expect("small");
            candidates.push(eval(ProjectiveMeasurement::new(theta, phi), &mut hint, tally));
        }
    }

    // Fixed candidates are always refined; the grid contributes its best few.
    let mut grid: Vec<_> = candidates.split_off(n_fixed);
    grid.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    candidates.extend(grid.into_iter().take(3));

    let step = (pi / T::from_usize(2 * (g - 1)).expect("small")).as_f64();
    let refine_opts = NelderMeadOptions {
        max_iters: cfg.max_iters,
        tol: T::lit(cfg.objective_tol),
        simplex_scale: T::lit(step),
    };
    let refine = |start: &(T, ProjectiveMeasurement<T>, ProductAnsatz<T>), tally: &mut Tally| {
        let hints = [start.2];
        let mut t = Tally::default();
        let r = nelder_mead(
            |x: &[T]| {
                -inner
                    .score(&ProjectiveMeasurement::new(x[0], x[1]), &hints, 0, 0, &mut t)
                    .value
            },
            &[start.1.theta, start.1.phi],
            &refine_opts,
        );
        tally.evaluations += t.evaluations;
        let m = ProjectiveMeasurement::new(r.point[0], r.point[1]);
        let s = inner.score(&m, &hints, 0, 0, tally);
        if s.value >= start.0 {
            (s.value, m, s.ansatz)
        } else {
            *start
        }
    };
    let mut best = candidates[0];
    for c in &candidates {
        let r = refine(c, tally);
        if r.0 > best.0 {
            best = r;
        }
    }

    // Full multistart of the inner problem at the winning measurement.
    let randoms = cfg.starts.saturating_sub(2);
    let full = inner.score(&best.1, &[best.2], randoms, cfg.seed ^ 0x9e37_79b9_7f4a_7c15, tally);
    if full.value < best.0 - T::lit(cfg.objective_tol) {
        best = refine(&(full.value, best.1, full.ansatz), tally);
    } else if full.value < best.0 {
        best = (full.value, best.1, full.ansatz);
    }
    ClassicalOptimum {
        value: best.0,
        measurement: best.1,
        ansatz: best.2,
    }
}

fn to_family<T: Real>(kind: &EntropyKind<T>, renyi: T) -> T {
    match kind.family {
        Family::Renyi => renyi,
        Family::Tsallis => kind
            .tsallis_from_renyi(ExtendedReal::Finite(renyi))
            .finite()
            .unwrap_or(renyi),
    }
}

fn warn_dpi<T: Real>(kind: &EntropyKind<T>) -> bool {
    let outside = !kind.in_dpi_range();
    if outside {
        log::warn!("{kind} is outside the data-processing range; correlations may not be monotone");
    }
    outside
}

/// `I(ρ)`: the minimum relative entropy to a product state, with its argmin.
pub fn total_correlation<T: Real>(
    rho: &DensityMatrix<T>,
    kind: &EntropyKind<T>,
    cfg: &OptimizerConfig,
) -> Result<(T, ProductAnsatz<T>)> {
    let (v, a, t) = total_inner(rho, kind, cfg, &[])?;
    t.require()?;
    Ok((to_family(kind, v), a))
}

/// Total correlation in Rényi units.
fn total_inner<T: Real>(
    rho: &DensityMatrix<T>,
    kind: &EntropyKind<T>,
    cfg: &OptimizerConfig,
    warm: &[ProductAnsatz<T>],
) -> Result<(T, ProductAnsatz<T>, Tally)> {
    check_two_qubit(rho)?;
    cfg.validate()?;
    warn_dpi(kind);
    let mut seeds = vec![ProductAnsatz::marginals_of(rho), ProductAnsatz::maximally_mixed()];
    seeds.extend_from_slice(warm);
    let (opt, tally) = minimize_product(
        rho,
        Functional::of(kind),
        cfg,
        &seeds,
        cfg.starts.saturating_sub(2),
        cfg.seed,
    );
    Ok((opt.value, opt.ansatz, tally))
}

/// `J(ρ)`: the classical correlation, with the optimal measurement and the
/// optimal product state for the measured state.
pub fn classical_correlation<T: Real>(
    rho: &DensityMatrix<T>,
    kind: &EntropyKind<T>,
    cfg: &OptimizerConfig,
) -> Result<(T, ProjectiveMeasurement<T>, ProductAnsatz<T>)> {
    let (c, t) = classical_inner(rho, kind, cfg, &WarmStart::default())?;
    t.require()?;
    Ok((to_family(kind, c.value), c.measurement, c.ansatz))
}

fn classical_inner<T: Real>(
    rho: &DensityMatrix<T>,
    kind: &EntropyKind<T>,
    cfg: &OptimizerConfig,
    warm: &WarmStart<T>,
) -> Result<(ClassicalOptimum<T>, Tally)> {
    check_two_qubit(rho)?;
    cfg.validate()?;
    let outside = warn_dpi(kind);
    let inner = Inner::new(rho, Functional::of(kind), !outside, cfg);
    let mut tally = Tally::default();
    let c = maximize_measurement(&inner, cfg, warm, &mut tally);
    Ok((c, tally))
}

/// `D(ρ) = I(ρ) - J(ρ)` together with both optimizations.
pub fn quantum_correlation<T: Real>(
    rho: &DensityMatrix<T>,
    kind: &EntropyKind<T>,
    cfg: &OptimizerConfig,
) -> Result<CorrelationResult<T>> {
    quantum_correlation_warm(rho, kind, cfg, &WarmStart::default())
}

/// [`quantum_correlation`] with additional starting points.
pub fn quantum_correlation_warm<T: Real>(
    rho: &DensityMatrix<T>,
    kind: &EntropyKind<T>,
    cfg: &OptimizerConfig,
    warm: &WarmStart<T>,
) -> Result<CorrelationResult<T>> {
    let (total_r, argmin_total, mut tally) = total_inner(rho, kind, cfg, &warm.products)?;
    tally.require()?;
    let (c, t) = classical_inner(rho, kind, cfg, warm)?;
    t.require()?;
    tally.add(t);
    Ok(assemble(kind, total_r, argmin_total, c, tally))
}

fn assemble<T: Real>(
    kind: &EntropyKind<T>,
    total_r: T,
    argmin_total: ProductAnsatz<T>,
    c: ClassicalOptimum<T>,
    tally: Tally,
) -> CorrelationResult<T> {
    let total = to_family(kind, total_r);
    let raw_classical = to_family(kind, c.value);
    let raw_quantum = total - raw_classical;
    let clamp = T::lit(DISCORD_CLAMP);
    let classical = if raw_quantum < T::zero() && raw_quantum >= -clamp {
        total
    } else {
        raw_classical
    };
    if raw_quantum < -clamp {
        log::warn!(
            "{kind}: classical exceeds total correlation by {:e}",
            -raw_quantum.as_f64()
        );
    }
    CorrelationResult {
        total,
        classical,
        quantum: total - classical,
        argmin_total,
        argmax_measurement: c.measurement,
        argmin_post: c.ansatz,
        kind: *kind,
        diagnostics: Diagnostics {
            starts_converged: tally.converged,
            starts_total: tally.runs,
            raw_quantum,
            raw_classical,
            outside_dpi_range: !kind.in_dpi_range(),
            evaluations: tally.evaluations,
        },
    }
}

/// Quantum discord with the von Neumann entropy: `I` from the marginals'
/// entropies and `J = S(ρ_A) - min_P Σ_i p_i S(ρ_A|i)`.
pub fn von_neumann_discord<T: Real>(rho: &DensityMatrix<T>, cfg: &OptimizerConfig) -> Result<CorrelationResult<T>> {
    quantum_correlation(rho, &EntropyKind::von_neumann(), cfg)
}

#[cfg(test)]
mod tests;
