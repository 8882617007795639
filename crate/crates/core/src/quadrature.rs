//! Globally adaptive Gauss–Kronrod (7/15) quadrature of vector-valued integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Target absolute error, summed over subintervals and maximized over components.
    pub abs_tol: f64,
    /// Deepest allowed bisection of the original interval.
    pub max_refinements: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            max_refinements: 20,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || self.max_refinements == 0 {
            return Err(Error::InvalidArgument(format!("bad quadrature config {self:?}")));
        }
        Ok(())
    }
}

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
/// Weights of the embedded 7-point Gauss rule at the odd Kronrod nodes and the centre.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone)]
struct Panel<T, const N: usize> {
    lo: T,
    hi: T,
    depth: usize,
    value: [T; N],
    error: T,
}

impl<T: Real, const N: usize> PartialEq for Panel<T, N> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real, const N: usize> Eq for Panel<T, N> {}
impl<T: Real, const N: usize> PartialOrd for Panel<T, N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real, const N: usize> Ord for Panel<T, N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn panel<T: Real, const N: usize>(f: &impl Fn(T) -> [T; N], lo: T, hi: T, depth: usize) -> Panel<T, N> {
    let half = T::lit(0.5);
    let centre = half * (lo + hi);
    let radius = half * (hi - lo);
    let mut kronrod = [T::zero(); N];
    let mut gauss = [T::zero(); N];
    let mut add = |x: T, wk: f64, wg: Option<f64>| {
        let v = f(x);
        for i in 0..N {
            kronrod[i] += T::lit(wk) * v[i];
            if let Some(wg) = wg {
                gauss[i] += T::lit(wg) * v[i];
            }
        }
    };
    add(centre, KRONROD_WEIGHTS[7], Some(GAUSS_WEIGHTS[3]));
    for j in 0..7 {
        let dx = radius * T::lit(KRONROD_NODES[j]);
        let wg = (j % 2 == 1).then(|| GAUSS_WEIGHTS[j / 2]);
        add(centre - dx, KRONROD_WEIGHTS[j], wg);
        add(centre + dx, KRONROD_WEIGHTS[j], wg);
    }
    let mut error = T::zero();
    let mut value = [T::zero(); N];
    for i in 0..N {
        value[i] = kronrod[i] * radius;
        error = error.max(((kronrod[i] - gauss[i]) * radius).abs());
    }
    Panel {
        lo,
        hi,
        depth,
        value,
        error,
    }
}

/// `∫_lo^hi f`, bisecting the panel with the largest error estimate until the
/// summed estimate is below `cfg.abs_tol`.
pub fn integrate<T: Real, const N: usize>(
    f: impl Fn(T) -> [T; N],
    lo: T,
    hi: T,
    cfg: &QuadratureConfig,
) -> Result<[T; N]> {
    cfg.validate()?;
    let tol = T::lit(cfg.abs_tol);
    let mut heap = BinaryHeap::new();
    let first = panel(&f, lo, hi, 0);
    let mut total_error = first.error;
    heap.push(first);
    while total_error > tol {
        let worst = heap.pop().expect("nonempty");
        if worst.depth >= cfg.max_refinements {
            return Err(Error::QuadratureFailure(total_error.as_f64()));
        }
        let mid = T::lit(0.5) * (worst.lo + worst.hi);
        let left = panel(&f, worst.lo, mid, worst.depth + 1);
        let right = panel(&f, mid, worst.hi, worst.depth + 1);
        total_error = total_error - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
    }
    let mut sum = [T::zero(); N];
    for p in heap.iter() {
        for i in 0..N {
            sum[i] += p.value[i];
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let cfg = QuadratureConfig::default();
        let v = integrate(|x: f64| [x.powi(10), 1.0], -1.0, 2.0, &cfg).unwrap();
        assert!((v[0] - (2f64.powi(11) + 1.0) / 11.0).abs() < 1e-12);
        assert!((v[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn sharp_peak_needs_refinement() {
        let eps = 1e-4;
        let cfg = QuadratureConfig::default();
        let v = integrate(|x: f64| [eps / (x * x + eps * eps)], 0.0, 1.0, &cfg).unwrap();
        assert!((v[0] - (1.0 / eps).atan()).abs() < 1e-9);
    }

    #[test]
    fn refinement_limit_is_reported() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-14,
            max_refinements: 2,
        };
        let r = integrate(|x: f64| [x.abs().sqrt()], -1.0, 1.0, &cfg);
        assert!(matches!(r, Err(Error::QuadratureFailure(_))));
    }

    #[test]
    fn smooth_transcendental() {
        let v = integrate(
            |x: f64| [x.sin(), x.exp()],
            0.0,
            std::f64::consts::PI,
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!((v[0] - 2.0).abs() < 1e-12);
        assert!((v[1] - (std::f64::consts::PI.exp() - 1.0)).abs() < 1e-10);
    }
}
