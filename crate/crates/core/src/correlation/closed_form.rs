//! Analytic correlations of pure states, Werner states and two-Bell mixtures.

use serde::Serialize;

use super::{quantum_correlation_warm, CorrelationResult, Diagnostics, OptimizerConfig, ProductAnsatz, WarmStart};
use crate::entropy::{EntropyKind, ExtendedReal, Family, Order, Variety};
use crate::error::{Error, Result};
use crate::qstate::ProjectiveMeasurement;
use crate::scalar::Real;
use crate::states;

fn in_unit<T: Real>(x: T, what: &str) -> Result<()> {
    if !(x >= T::zero() && x <= T::one()) {
        return Err(Error::InvalidArgument(format!(
            "{what} = {} outside [0, 1]",
            x.as_f64()
        )));
    }
    Ok(())
}

fn to_family<T: Real>(kind: &EntropyKind<T>, renyi: T) -> T {
    match kind.family {
        Family::Renyi => renyi,
        Family::Tsallis => kind.tsallis_from_renyi(ExtendedReal::Finite(renyi)).or(renyi),
    }
}

fn result<T: Real>(
    kind: &EntropyKind<T>,
    total_r: T,
    classical_r: T,
    total_z: T,
    post_a_z: T,
    post_b_z: T,
) -> CorrelationResult<T> {
    let total = to_family(kind, total_r);
    let classical = to_family(kind, classical_r);
    let z = |v: T| [T::zero(), T::zero(), v];
    CorrelationResult {
        total,
        classical,
        quantum: total - classical,
        argmin_total: ProductAnsatz::new(z(total_z), z(total_z)),
        argmax_measurement: ProjectiveMeasurement::z(),
        argmin_post: ProductAnsatz::new(z(post_a_z), z(post_b_z)),
        kind: *kind,
        diagnostics: Diagnostics {
            starts_converged: 0,
            starts_total: 0,
            raw_quantum: total - classical,
            raw_classical: classical,
            outside_dpi_range: !kind.in_dpi_range(),
            evaluations: 0,
        },
    }
}

/// Minimum of `scale · log2 f(a)` over `a ∈ [0, 1]`, taken over the stationary
/// point (if finite and inside) and the two endpoints. Returns `(value, a)`.
fn min_over_a(scale: f64, f: impl Fn(f64) -> f64, stationary: f64) -> (f64, f64) {
    let mut best = (f64::INFINITY, 0.5);
    let mut cands = vec![0.0, 1.0];
    if stationary.is_finite() && (0.0..=1.0).contains(&stationary) {
        cands.push(stationary);
    }
    for a in cands {
        let v = scale * f(a).log2();
        if v.is_finite() && v < best.0 {
            best = (v, a);
        }
    }
    best
}

/// `1/a = r^e + 1` evaluated without overflow.
fn stationary(ratio: f64, exponent: f64) -> f64 {
    if !exponent.is_finite() {
        return f64::NAN;
    }
    1.0 / (ratio.powf(exponent) + 1.0)
}

/// Closed-form correlations of `√λ|00⟩ + √(1-λ)|11⟩`.
///
/// Sandwiched kinds need `α ≥ ½`; the von Neumann case returns the Schmidt
/// entropy pattern `I = 2J = 2D`. Traditional kinds are rejected, see
/// [`pure_total_closed_form`].
pub fn pure_closed_form<T: Real>(lambda: T, kind: &EntropyKind<T>) -> Result<CorrelationResult<T>> {
    in_unit(lambda, "lambda")?;
    let l = lambda.as_f64();
    let t = T::lit;
    if l == 0.0 || l == 1.0 {
        let z = if l == 1.0 { 1.0 } else { -1.0 };
        return Ok(result(kind, T::zero(), T::zero(), t(z), t(z), t(z)));
    }
    let ratio = l / (1.0 - l);
    match (kind.variety, kind.order) {
        (_, Order::One) => {
            let h = -l * l.log2() - (1.0 - l) * (1.0 - l).log2();
            Ok(result(
                kind,
                t(2.0 * h),
                t(h),
                t(2.0 * l - 1.0),
                t(2.0 * l - 1.0),
                t(2.0 * l - 1.0),
            ))
        }
        (Variety::Sandwiched, Order::Infinity) => {
            let (c, cm) = (l.cbrt(), (1.0 - l).cbrt());
            let (s, sm) = (l.sqrt(), (1.0 - l).sqrt());
            let total = 3.0 * (c + cm).log2();
            let classical = 2.0 * (s + sm).log2();
            let a_tot = c / (c + cm);
            let a_cl = s / (s + sm);
            Ok(result(
                kind,
                t(total),
                t(classical),
                t(2.0 * a_tot - 1.0),
                t(2.0 * a_cl - 1.0),
                t(2.0 * a_cl - 1.0),
            ))
        }
        (Variety::Sandwiched, Order::Alpha(alpha)) => {
            let a = alpha.as_f64();
            if a < 0.5 {
                return Err(Error::OutOfClosedFormRange(format!("{kind} needs alpha >= 1/2")));
            }
            let e = 2.0 * (1.0 - a) / a;
            let (total, a_tot) = min_over_a(
                a / (a - 1.0),
                |x| l * x.powf(e) + (1.0 - l) * (1.0 - x).powf(e),
                stationary(ratio, a / (2.0 - 3.0 * a)),
            );
            let (classical, a_cl) = classical_pure(l, a);
            Ok(result(
                kind,
                t(total),
                t(classical),
                t(2.0 * a_tot - 1.0),
                t(2.0 * a_cl - 1.0),
                t(2.0 * a_cl - 1.0),
            ))
        }
        (Variety::Traditional, _) => Err(Error::UnsupportedKind(format!(
            "{kind}: only the total correlation of a pure state has a closed form"
        ))),
    }
}

/// Closed-form total correlation of `√λ|00⟩ + √(1-λ)|11⟩` for the traditional
/// Rényi kind with `½ ≤ α < 1`. Returns the value and the Bloch `z` component
/// of the minimizing symmetric product state.
pub fn pure_total_closed_form<T: Real>(lambda: T, kind: &EntropyKind<T>) -> Result<(T, T)> {
    in_unit(lambda, "lambda")?;
    let alpha = match (kind.variety, kind.order) {
        (Variety::Traditional, Order::Alpha(a)) if (0.5..1.0).contains(&a.as_f64()) => a.as_f64(),
        _ => {
            return Err(Error::OutOfClosedFormRange(format!(
                "{kind} needs traditional 1/2 <= alpha < 1"
            )))
        }
    };
    let l = lambda.as_f64();
    if l == 0.0 || l == 1.0 {
        return Ok((T::zero(), T::lit(2.0 * l - 1.0)));
    }
    let k = 2.0 * (1.0 - alpha);
    let (total, a) = min_over_a(
        1.0 / (alpha - 1.0),
        |x| l * x.powf(k) + (1.0 - l) * (1.0 - x).powf(k),
        stationary(l / (1.0 - l), 1.0 / (1.0 - 2.0 * alpha)),
    );
    Ok((to_family(kind, T::lit(total)), T::lit(2.0 * a - 1.0)))
}

/// Classical correlation of a pure state measured in its Schmidt basis.
fn classical_pure(l: f64, a: f64) -> (f64, f64) {
    let k = 2.0 * (1.0 - a);
    min_over_a(
        1.0 / (a - 1.0),
        |x| l.powf(a) * x.powf(k) + (1.0 - l).powf(a) * (1.0 - x).powf(k),
        stationary(l / (1.0 - l), a / (1.0 - 2.0 * a)),
    )
}

/// Closed-form correlations of the Werner state `p|ψ⁻⟩⟨ψ⁻| + (1-p)I/4`, valid
/// for sandwiched `α ≥ ⅔`, traditional `½ ≤ α < 1`, and the max kind.
pub fn werner_closed_form<T: Real>(p: T, kind: &EntropyKind<T>) -> Result<CorrelationResult<T>> {
    in_unit(p, "p")?;
    let p = p.as_f64();
    let t = T::lit;
    let zero = T::zero();
    match (kind.variety, kind.order) {
        (Variety::Sandwiched, Order::Infinity) => Ok(result(
            kind,
            t((1.0 + 3.0 * p).log2()),
            t((1.0 + p).log2()),
            zero,
            zero,
            zero,
        )),
        (variety, Order::Alpha(alpha)) => {
            let a = alpha.as_f64();
            let ok = match variety {
                Variety::Sandwiched => a >= 2.0 / 3.0,
                Variety::Traditional => (0.5..1.0).contains(&a),
            };
            if !ok {
                return Err(Error::OutOfClosedFormRange(format!("{kind} for the Werner state")));
            }
            let scale = 1.0 / (a - 1.0);
            let quarter = 0.25f64.powf(a);
            let total = 2.0 + scale * (quarter * ((1.0 + 3.0 * p).powf(a) + 3.0 * (1.0 - p).powf(a))).log2();
            let classical = 2.0 + scale * (quarter * (2.0 * (1.0 + p).powf(a) + 2.0 * (1.0 - p).powf(a))).log2();
            Ok(result(kind, t(total), t(classical), zero, zero, zero))
        }
        _ => Err(Error::UnsupportedKind(kind.to_string())),
    }
}

/// Closed-form correlations of `p|φ⁺⟩⟨φ⁺| + (1-p)|φ⁻⟩⟨φ⁻|` for sandwiched
/// `α ≥ ⅔` and the max kind. The classical correlation is one bit throughout.
pub fn bell_mixture_closed_form<T: Real>(p: T, kind: &EntropyKind<T>) -> Result<CorrelationResult<T>> {
    in_unit(p, "p")?;
    let p = p.as_f64();
    let t = T::lit;
    let zero = T::zero();
    match (kind.variety, kind.order) {
        (Variety::Sandwiched, Order::Infinity) => {
            Ok(result(kind, t(2.0 + p.max(1.0 - p).log2()), T::one(), zero, zero, zero))
        }
        (Variety::Sandwiched, Order::Alpha(alpha)) => {
            let a = alpha.as_f64();
            if a < 2.0 / 3.0 {
                return Err(Error::OutOfClosedFormRange(format!("{kind} for the Bell mixture")));
            }
            let total = 2.0 + (p.powf(a) + (1.0 - p).powf(a)).log2() / (a - 1.0);
            Ok(result(kind, t(total), T::one(), zero, zero, zero))
        }
        _ => Err(Error::UnsupportedKind(kind.to_string())),
    }
}

/// Location of the largest Werner-state quantum correlation over a grid of `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnomalyPeak<T> {
    pub p_max: T,
    pub value: T,
    /// The maximum sits on the last grid point rather than in the interior.
    pub at_boundary: bool,
    pub curve: Vec<(T, T)>,
}

/// Scans `D(ρ_W(p))` over a uniform increasing grid and refines the maximum
/// by a parabola through its neighbours.
pub fn werner_anomaly_scan<T: Real>(
    kind: &EntropyKind<T>,
    p_grid: &[T],
    cfg: &OptimizerConfig,
) -> Result<AnomalyPeak<T>> {
    if p_grid.len() < 3 {
        return Err(Error::TooFewPoints {
            got: p_grid.len(),
            need: 3,
        });
    }
    let mut warm = WarmStart::default();
    let mut curve = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        in_unit(p, "p")?;
        let r = quantum_correlation_warm(&states::werner(p), kind, cfg, &warm)?;
        warm = WarmStart::from_result(&r);
        curve.push((p, r.quantum));
    }
    let (i, _) = curve
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.partial_cmp(&b.1 .1).unwrap_or(std::cmp::Ordering::Equal))
        .expect("nonempty grid");
    if i == 0 || i == curve.len() - 1 {
        return Ok(AnomalyPeak {
            p_max: curve[i].0,
            value: curve[i].1,
            at_boundary: true,
            curve,
        });
    }
    let (x0, y0) = curve[i - 1];
    let (x1, y1) = curve[i];
    let (_, y2) = curve[i + 1];
    let h = x1 - x0;
    let curv = y2 - y1 - y1 + y0;
    let half = T::lit(0.5);
    let (p_max, value) = if curv < T::zero() {
        let shift = half * (y0 - y2) / curv;
        (x1 + shift * h, y1 - T::lit(0.125) * (y2 - y0) * (y2 - y0) / curv)
    } else {
        (x1, y1)
    };
    Ok(AnomalyPeak {
        p_max,
        value,
        at_boundary: false,
        curve,
    })
}
