//! Nearest-neighbour reduced state of the transverse-field Ising ring at zero
//! temperature, `H = Σ σˣᵢσˣᵢ₊₁ − λ Σ σᶻᵢ` with periodic boundary.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{seeded_rng, ComplexMatrix, DensityMatrix};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::scalar::{cr, Real};

/// Eigenvalues of the assembled state down to minus this are clamped to zero.
pub const STATE_PSD_TOL: f64 = 1e-9;

/// Largest ring handled by [`ed_oracle`].
pub const ED_MAX_SITES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainLength {
    Finite(usize),
    Infinite,
}

impl ChainLength {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinite" | "∞" => Ok(ChainLength::Infinite),
            _ => {
                let n: usize = s.parse().map_err(|_| {
                    Error::InvalidArgument(format!("chain length {s:?} is neither an integer nor \"inf\""))
                })?;
                check_size(n)?;
                Ok(ChainLength::Finite(n))
            }
        }
    }
}

impl std::fmt::Display for ChainLength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChainLength::Finite(n) => write!(f, "{n}"),
            ChainLength::Infinite => write!(f, "inf"),
        }
    }
}

/// Field ratio `λ = h/J` and ring length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingPoint<T> {
    pub lambda: T,
    pub n_sites: ChainLength,
}

impl<T: Real> IsingPoint<T> {
    pub fn new(lambda: T, n_sites: ChainLength) -> Result<Self> {
        if !(lambda > T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "lambda = {} must be positive",
                lambda.as_f64()
            )));
        }
        if let ChainLength::Finite(n) = n_sites {
            check_size(n)?;
        }
        Ok(IsingPoint { lambda, n_sites })
    }

    pub fn correlators(&self, q: &QuadratureConfig) -> Result<IsingCorrelators<T>> {
        match self.n_sites {
            ChainLength::Infinite => correlators_infinite(self.lambda, q),
            ChainLength::Finite(n) => correlators_finite(self.lambda, n),
        }
    }

    pub fn state(&self, q: &QuadratureConfig) -> Result<DensityMatrix<T>> {
        nearest_neighbor_state(&self.correlators(q)?)
    }
}

/// `T_ij = ⟨σⁱ⊗σʲ⟩` on a bond and the transverse magnetization `⟨σᶻ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingCorrelators<T> {
    pub t_xx: T,
    pub t_yy: T,
    pub t_zz: T,
    pub m_z: T,
}

impl<T: Real> IsingCorrelators<T> {
    fn from_integrals(g_plus: T, g_minus: T, m_z: T) -> Self {
        IsingCorrelators {
            t_xx: g_minus,
            t_yy: g_plus,
            t_zz: m_z * m_z - g_plus * g_minus,
            m_z,
        }
    }

    pub fn max_distance(&self, other: &Self) -> T {
        (self.t_xx - other.t_xx)
            .abs()
            .max((self.t_yy - other.t_yy).abs())
            .max((self.t_zz - other.t_zz).abs())
            .max((self.m_z - other.m_z).abs())
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::BadSize(n));
    }
    Ok(())
}

fn check_lambda<T: Real>(lambda: T) -> Result<()> {
    if !(lambda >= T::zero()) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambda = {} must be non-negative",
            lambda.as_f64()
        )));
    }
    Ok(())
}

/// Integrands of `G(1)`, `G(-1)` and `M_z`, each to be averaged over `[0, π]`.
fn integrands<T: Real>(lambda: T, phi: T) -> [T; 3] {
    if lambda == T::one() && phi < T::lit(1e-8) {
        return [T::zero(); 3];
    }
    let (s, c) = phi.sin_cos();
    let gap = (s * s + (lambda - c) * (lambda - c)).sqrt();
    let shift = lambda * c;
    [
        (shift - (phi + phi).cos()) / gap,
        (shift - T::one()) / gap,
        (lambda - c) / gap,
    ]
}

/// Thermodynamic-limit correlators by adaptive quadrature.
pub fn correlators_infinite<T: Real>(lambda: T, q: &QuadratureConfig) -> Result<IsingCorrelators<T>> {
    check_lambda(lambda)?;
    let pi = T::pi();
    // Split at the integrand's sharpest feature, which sits near φ = |1 - λ|.
    let knee = (lambda - T::one()).abs().min(T::one()).max(T::lit(1e-6)).min(pi);
    let sub = QuadratureConfig {
        abs_tol: q.abs_tol * 0.5,
        ..*q
    };
    let f = |phi: T| integrands(lambda, phi);
    let a = integrate(f, T::zero(), knee, &sub)?;
    let b = integrate(f, knee, pi, &sub)?;
    let [gp, gm, m] = [0, 1, 2].map(|i| (a[i] + b[i]) / pi);
    Ok(IsingCorrelators::from_integrals(gp, gm, m))
}

/// Correlators of an `n`-site ring: the φ-average becomes a sum over the
/// antiperiodic momenta `(2p-1)π/n`.
pub fn correlators_finite<T: Real>(lambda: T, n: usize) -> Result<IsingCorrelators<T>> {
    check_size(n)?;
    check_lambda(lambda)?;
    let nn = T::from_usize(n).expect("small");
    let mut acc = [T::zero(); 3];
    for p in 1..=n / 2 {
        let phi = T::pi() * T::from_usize(2 * p - 1).expect("small") / nn;
        let v = integrands(lambda, phi);
        for i in 0..3 {
            acc[i] += v[i];
        }
    }
    let w = T::lit(2.0) / nn;
    Ok(IsingCorrelators::from_integrals(acc[0] * w, acc[1] * w, acc[2] * w))
}

/// The X-shaped two-site state built from the correlators.
pub fn nearest_neighbor_state<T: Real>(c: &IsingCorrelators<T>) -> Result<DensityMatrix<T>> {
    DensityMatrix::with_psd_tolerance(x_matrix(c), vec![2, 2], STATE_PSD_TOL)
}

/// The unvalidated matrix behind [`nearest_neighbor_state`].
pub fn x_matrix<T: Real>(c: &IsingCorrelators<T>) -> ComplexMatrix<T> {
    let quarter = T::lit(0.25);
    let half = T::lit(0.5);
    let alpha_p = quarter * (T::one() + c.t_zz);
    let alpha_m = quarter * (T::one() - c.t_zz);
    let beta_p = quarter * (c.t_xx + c.t_yy);
    let beta_m = quarter * (c.t_xx - c.t_yy);
    let mut m: ComplexMatrix<T> = DMatrix::zeros(4, 4);
    m[(0, 0)] = cr(alpha_p + half * c.m_z);
    m[(1, 1)] = cr(alpha_m);
    m[(2, 2)] = cr(alpha_m);
    m[(3, 3)] = cr(alpha_p - half * c.m_z);
    m[(0, 3)] = cr(beta_m);
    m[(3, 0)] = cr(beta_m);
    m[(1, 2)] = cr(beta_p);
    m[(2, 1)] = cr(beta_p);
    m
}

/// Correlators measured on every bond of the exact ground state, in the
/// sector of even `Π σᶻ`.
#[derive(Debug, Clone)]
pub struct EdGroundState<T> {
    pub energy: T,
    pub bonds: Vec<IsingCorrelators<T>>,
}

fn apply_hamiltonian<T: Real>(lambda: T, n: usize, v: &[T], out: &mut [T]) {
    for (s, o) in out.iter_mut().enumerate() {
        let up = n as i64 - 2 * i64::from(s.count_ones());
        *o = -lambda * T::from_i64(up).expect("small") * v[s];
    }
    for i in 0..n {
        let flip = (1usize << i) | (1usize << ((i + 1) % n));
        for (s, o) in out.iter_mut().enumerate() {
            *o += v[s ^ flip];
        }
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y)
}

/// Lowest eigenpair of `H` restricted to even parity, by Lanczos with full
/// reorthogonalization.
fn lanczos_ground<T: Real>(lambda: T, n: usize) -> (T, Vec<T>) {
    let dim = 1usize << n;
    let mut rng = seeded_rng(0x15_1e6);
    let mut v0: Vec<T> = (0..dim)
        .map(|s| {
            let x: f64 = rng.random_range(-1.0..1.0);
            if s.count_ones() % 2 == 0 {
                T::lit(x)
            } else {
                T::zero()
            }
        })
        .collect();
    let norm = dot(&v0, &v0).sqrt();
    v0.iter_mut().for_each(|x| *x /= norm);
    let sector = dim / 2;
    let max_steps = sector.min(300);
    let mut basis: Vec<Vec<T>> = vec![v0];
    let mut alphas = Vec::new();
    let mut betas: Vec<T> = Vec::new();
    let mut w = vec![T::zero(); dim];
    let mut last = T::max_value().expect("bounded");
    let tol = T::lit(1e-14);
    loop {
        let k = basis.len() - 1;
        apply_hamiltonian(lambda, n, &basis[k], &mut w);
        let a = dot(&w, &basis[k]);
        alphas.push(a);
        for b in &basis {
            let c = dot(&w, b);
            w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * *y);
        }
        let beta = dot(&w, &w).sqrt();
        let t = DMatrix::from_fn(alphas.len(), alphas.len(), |i, j| {
            if i == j {
                alphas[i]
            } else if i + 1 == j {
                betas[i]
            } else if j + 1 == i {
                betas[j]
            } else {
                T::zero()
            }
        });
        let eig = SymmetricEigen::new(t);
        let (imin, &emin) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty");
        let residual = (beta * eig.eigenvectors[(alphas.len() - 1, imin)]).abs();
        let done = residual < tol
            || beta < tol
            || basis.len() >= max_steps
            || (last - emin).abs() < T::lit(1e-15) && residual < T::lit(1e-12);
        last = emin;
        if done {
            let mut psi = vec![T::zero(); dim];
            for (j, b) in basis.iter().enumerate() {
                let c = eig.eigenvectors[(j, imin)];
                psi.iter_mut().zip(b).for_each(|(x, y)| *x += c * *y);
            }
            let norm = dot(&psi, &psi).sqrt();
            psi.iter_mut().for_each(|x| *x /= norm);
            return (emin, psi);
        }
        betas.push(beta);
        basis.push(w.iter().map(|x| *x / beta).collect());
    }
}

/// Exact ground state of a ring of `n ≤ 12` sites with all bond correlators.
pub fn ed_ground_state<T: Real>(lambda: T, n: usize) -> Result<EdGroundState<T>> {
    check_size(n)?;
    check_lambda(lambda)?;
    if n > ED_MAX_SITES {
        return Err(Error::TooLarge(n));
    }
    let (energy, psi) = lanczos_ground(lambda, n);
    let sign = |s: usize, i: usize| if s >> i & 1 == 0 { T::one() } else { -T::one() };
    let bonds = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let flip = (1usize << i) | (1usize << j);
            let mut c = IsingCorrelators {
                t_xx: T::zero(),
                t_yy: T::zero(),
                t_zz: T::zero(),
                m_z: T::zero(),
            };
            for (s, &a) in psi.iter().enumerate() {
                let (si, sj) = (sign(s, i), sign(s, j));
                let hop = a * psi[s ^ flip];
                c.t_xx += hop;
                c.t_yy -= si * sj * hop;
                c.t_zz += si * sj * a * a;
                c.m_z += sj * a * a;
            }
            c
        })
        .collect();
    Ok(EdGroundState { energy, bonds })
}

/// Bond correlators of the exact ground state, for cross-checking
/// [`correlators_finite`].
pub fn ed_oracle<T: Real>(lambda: T, n: usize) -> Result<IsingCorrelators<T>> {
    Ok(ed_ground_state(lambda, n)?.bonds[0])
}
