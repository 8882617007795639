//! Relative entropies against product states `σ_A ⊗ σ_B`, specialized to two
//! qubits so that the optimizers can evaluate them cheaply. Values are in
//! Rényi units (bits); the Tsallis family is obtained by the monotone map.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex;

use crate::entropy::{ln_power_sum, shannon_bits, value_from_ln_trace, EntropyKind, Family, Order, Variety};
use crate::qstate::{DensityMatrix, ProjectiveMeasurement, Spectrum};
use crate::scalar::{cr, log2, Real, C};

pub(crate) type M2<T> = Matrix2<C<T>>;
pub(crate) type M4<T> = Matrix4<C<T>>;

/// Trace functional a kind reduces to, independent of the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Functional<T> {
    Sandwiched(T),
    Traditional(T),
    Max,
    VonNeumann,
}

impl<T: Real> Functional<T> {
    pub(crate) fn of(kind: &EntropyKind<T>) -> Self {
        match (kind.order, kind.variety) {
            (Order::One, _) => Functional::VonNeumann,
            (Order::Infinity, _) => Functional::Max,
            (Order::Alpha(a), Variety::Sandwiched) => Functional::Sandwiched(a),
            (Order::Alpha(a), Variety::Traditional) => Functional::Traditional(a),
        }
    }
}

/// `σ^t = c0·I + c1·n̂·σ` for the qubit state with Bloch vector `r`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QubitPower<T> {
    pub c0: T,
    pub c1: T,
    pub n: [T; 3],
    /// Product of the two eigenvalues of `σ`.
    pub det: T,
}

pub(crate) fn qubit_power<T: Real>(r: &[T; 3], t: T) -> QubitPower<T> {
    let h = T::lit(0.5);
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let (ep, em) = (h * (T::one() + norm), h * (T::one() - norm));
    let (pp, pm) = (ep.powf(t), em.powf(t));
    let n = if norm > T::zero() {
        [r[0] / norm, r[1] / norm, r[2] / norm]
    } else {
        [T::zero(), T::zero(), T::one()]
    };
    QubitPower {
        c0: h * (pp + pm),
        c1: h * (pp - pm),
        n,
        det: ep * em,
    }
}

impl<T: Real> QubitPower<T> {
    pub(crate) fn matrix(&self) -> M2<T> {
        let [x, y, z] = self.n;
        let c1 = self.c1;
        Matrix2::new(
            cr(self.c0 + c1 * z),
            Complex::new(c1 * x, -c1 * y),
            Complex::new(c1 * x, c1 * y),
            cr(self.c0 - c1 * z),
        )
    }

    fn dot(&self, w: &[T; 3]) -> T {
        self.n[0] * w[0] + self.n[1] * w[1] + self.n[2] * w[2]
    }
}

pub(crate) fn kron2<T: Real>(a: &M2<T>, b: &M2<T>) -> M4<T> {
    Matrix4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

pub(crate) fn to_m4<T: Real>(rho: &DensityMatrix<T>) -> M4<T> {
    let m = rho.matrix();
    Matrix4::from_fn(|i, j| m[(i, j)])
}

/// Eigenvalues of a 2×2 positive semidefinite matrix from trace and determinant.
fn eig2<T: Real>(trace: T, det: T) -> (T, T) {
    let h = T::lit(0.5);
    let disc = (trace * trace - det * T::lit(4.0)).max(T::zero()).sqrt();
    let top = h * (trace + disc);
    let bottom = if top > T::zero() {
        (det / top).max(T::zero())
    } else {
        T::zero()
    };
    (top, bottom)
}

/// `S(ρ ‖ σ_A ⊗ σ_B)` for a fixed two-qubit `ρ`.
pub(crate) struct TotalObjective<T: Real> {
    rho: M4<T>,
    functional: Functional<T>,
    /// `ρ^α` for the traditional variety.
    rho_alpha: M4<T>,
    /// `-S(ρ)` and the marginals' Bloch vectors for the von Neumann case.
    neg_entropy: T,
    marginals: [[T; 3]; 2],
}

impl<T: Real> TotalObjective<T> {
    pub(crate) fn new(rho: &DensityMatrix<T>, functional: Functional<T>) -> Self {
        let m4 = to_m4(rho);
        let rho_alpha = match functional {
            Functional::Traditional(a) => {
                let p = Spectrum::of_unchecked(rho.matrix()).support_power(a);
                Matrix4::from_fn(|i, j| p[(i, j)])
            }
            _ => Matrix4::zeros(),
        };
        TotalObjective {
            rho: m4,
            functional,
            rho_alpha,
            neg_entropy: -shannon_bits(&rho.eigenvalues()),
            marginals: marginal_blochs(&m4),
        }
    }

    pub(crate) fn value(&self, a: &[T; 3], b: &[T; 3]) -> T {
        match self.functional {
            Functional::Sandwiched(alpha) => {
                let s = (T::one() - alpha) / (alpha + alpha);
                let p = kron2(&qubit_power(a, s).matrix(), &qubit_power(b, s).matrix());
                let m = p * self.rho * p;
                if alpha == T::lit(2.0) {
                    let q = m.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
                    return log2(q);
                }
                let mu = m.symmetric_eigenvalues();
                let mu: Vec<T> = mu.iter().map(|&x| x.max(T::zero())).collect();
                value_from_ln_trace(Family::Renyi, alpha, ln_power_sum(&mu, alpha)).or(T::max_value().expect("bounded"))
            }
            Functional::Traditional(alpha) => {
                let t = T::one() - alpha;
                let p = kron2(&qubit_power(a, t).matrix(), &qubit_power(b, t).matrix());
                let q = (self.rho_alpha * p).trace().re;
                if q <= T::zero() {
                    return T::max_value().expect("bounded");
                }
                log2(q) / (alpha - T::one())
            }
            Functional::Max => {
                let h = T::lit(-0.5);
                let p = kron2(&qubit_power(a, h).matrix(), &qubit_power(b, h).matrix());
                let m = p * self.rho * p;
                let top = m.symmetric_eigenvalues().iter().copied().fold(T::zero(), T::max);
                log2(top)
            }
            Functional::VonNeumann => {
                // tr ρ_X log σ_X with log σ = ½(lp + lm)·I + ½(lp - lm)·n̂·σ
                let cross = |r: &[T; 3], w: &[T; 3]| {
                    let n = qubit_power(r, T::one()).n;
                    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
                    let h = T::lit(0.5);
                    let (lp, lm) = (log2(h * (T::one() + norm)), log2(h * (T::one() - norm)));
                    let dot = n[0] * w[0] + n[1] * w[1] + n[2] * w[2];
                    h * (lp + lm) + h * (lp - lm) * dot
                };
                self.neg_entropy - cross(a, &self.marginals[0]) - cross(b, &self.marginals[1])
            }
        }
    }
}

/// Bloch vectors of the two one-qubit marginals of a 4×4 state.
pub(crate) fn marginal_blochs<T: Real>(rho: &M4<T>) -> [[T; 3]; 2] {
    let two = T::lit(2.0);
    let ra01 = rho[(0, 2)] + rho[(1, 3)];
    let rb01 = rho[(0, 1)] + rho[(2, 3)];
    [
        [
            two * ra01.re,
            -two * ra01.im,
            rho[(0, 0)].re + rho[(1, 1)].re - rho[(2, 2)].re - rho[(3, 3)].re,
        ],
        [
            two * rb01.re,
            -two * rb01.im,
            rho[(0, 0)].re - rho[(1, 1)].re + rho[(2, 2)].re - rho[(3, 3)].re,
        ],
    ]
}

/// One conditional state `ρ_A|i` with its outcome probability.
#[derive(Debug, Clone, Copy)]
struct Block<T> {
    outcome: usize,
    weight: T,
    bloch: [T; 3],
    det: T,
    /// `ρ̂^α = d0·I + v·σ` for the traditional variety.
    d0: T,
    v: [T; 3],
}

/// The post-measurement state `Σ_i p_i ρ_A|i ⊗ |i⟩⟨i|`, with the minimization over
/// `σ_B` (diagonal in the measured basis) carried out analytically.
pub(crate) struct MeasuredBlocks<T: Real> {
    blocks: Vec<Block<T>>,
    functional: Functional<T>,
}

impl<T: Real> MeasuredBlocks<T> {
    pub(crate) fn new(rho: &M4<T>, m: &ProjectiveMeasurement<T>, functional: Functional<T>) -> Self {
        let h = T::lit(0.5);
        let two = T::lit(2.0);
        let mut blocks = Vec::with_capacity(2);
        for (outcome, v) in m.rays().into_iter().enumerate() {
            let mut cond = Matrix2::<C<T>>::zeros();
            for a in 0..2 {
                for ap in 0..2 {
                    let mut acc = cr(T::zero());
                    for b in 0..2 {
                        for bp in 0..2 {
                            acc += v[b].conj() * rho[(2 * a + b, 2 * ap + bp)] * v[bp];
                        }
                    }
                    cond[(a, ap)] = acc;
                }
            }
            let weight = cond[(0, 0)].re + cond[(1, 1)].re;
            if weight <= T::lit(1e-15) {
                continue;
            }
            let bloch = [
                two * cond[(0, 1)].re / weight,
                -two * cond[(0, 1)].im / weight,
                (cond[(0, 0)].re - cond[(1, 1)].re) / weight,
            ];
            let nb2 = bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2];
            let det = (h * h * (T::one() - nb2)).max(T::zero());
            let (d0, v) = match functional {
                Functional::Traditional(alpha) => {
                    let nb = nb2.sqrt().min(T::one());
                    let (pp, pm) = ((h * (T::one() + nb)).powf(alpha), (h * (T::one() - nb)).powf(alpha));
                    let d1 = h * (pp - pm);
                    let n = if nb > T::zero() {
                        bloch.map(|x| x / nb)
                    } else {
                        [T::zero(); 3]
                    };
                    (h * (pp + pm), n.map(|x| x * d1))
                }
                _ => (T::zero(), [T::zero(); 3]),
            };
            blocks.push(Block {
                outcome,
                weight,
                bloch,
                det,
                d0,
                v,
            });
        }
        MeasuredBlocks { blocks, functional }
    }

    /// Per-block norms `N_i` such that the optimal value is a function of `Σ p_i N_i`.
    fn norms(&self, r_a: &[T; 3]) -> Vec<T> {
        match self.functional {
            Functional::Sandwiched(alpha) => {
                let s2 = (T::one() - alpha) / alpha;
                let p = qubit_power(r_a, s2);
                let det_scale = p.det.powf(s2);
                self.blocks
                    .iter()
                    .map(|b| {
                        let (top, bottom) = eig2(p.c0 + p.c1 * p.dot(&b.bloch), det_scale * b.det);
                        if top <= T::zero() {
                            return T::zero();
                        }
                        top * (T::one() + (bottom / top).powf(alpha)).powf(T::one() / alpha)
                    })
                    .collect()
            }
            Functional::Traditional(alpha) => {
                let p = qubit_power(r_a, T::one() - alpha);
                self.blocks
                    .iter()
                    .map(|b| {
                        let q = (b.d0 * p.c0 + p.c1 * p.dot(&b.v)) * T::lit(2.0);
                        q.max(T::zero()).powf(T::one() / alpha)
                    })
                    .collect()
            }
            Functional::Max => {
                let p = qubit_power(r_a, -T::one());
                self.blocks
                    .iter()
                    .map(|b| eig2(p.c0 + p.c1 * p.dot(&b.bloch), b.det / p.det).0)
                    .collect()
            }
            Functional::VonNeumann => vec![T::zero(); self.blocks.len()],
        }
    }

    /// `min_{σ_B} S(ρ' ‖ σ_A ⊗ σ_B)` for the given `σ_A`.
    pub(crate) fn value(&self, r_a: &[T; 3]) -> T {
        let total = self
            .norms(r_a)
            .iter()
            .zip(&self.blocks)
            .fold(T::zero(), |acc, (&n, b)| acc + b.weight * n);
        if total <= T::zero() {
            return T::max_value().expect("bounded");
        }
        match self.functional {
            Functional::Sandwiched(alpha) | Functional::Traditional(alpha) => alpha / (alpha - T::one()) * log2(total),
            Functional::Max => log2(total),
            Functional::VonNeumann => unreachable!("von Neumann blocks are scored in closed form"),
        }
    }

    /// Weights `(b_0, b_1)` of the optimal `σ_B` in the measured basis.
    pub(crate) fn b_weights(&self, r_a: &[T; 3]) -> [T; 2] {
        let norms = self.norms(r_a);
        let mut out = [T::zero(); 2];
        let mut total = T::zero();
        for (b, n) in self.blocks.iter().zip(norms) {
            let w = b.weight * n;
            total += w;
            out[b.outcome] = w;
        }
        if total > T::zero() {
            out.iter_mut().for_each(|x| *x /= total);
        }
        out
    }

    /// Conditional von Neumann entropy `Σ_i p_i S(ρ_A|i)`.
    pub(crate) fn conditional_entropy(&self) -> T {
        let h = T::lit(0.5);
        self.blocks.iter().fold(T::zero(), |acc, b| {
            let n = (b.bloch[0] * b.bloch[0] + b.bloch[1] * b.bloch[1] + b.bloch[2] * b.bloch[2])
                .sqrt()
                .min(T::one());
            acc + b.weight * shannon_bits(&[h * (T::one() + n), h * (T::one() - n)])
        })
    }

    /// Outcome probabilities and conditional Bloch vectors.
    pub(crate) fn outcomes(&self) -> Vec<(T, [T; 3])> {
        self.blocks.iter().map(|b| (b.weight, b.bloch)).collect()
    }
}
