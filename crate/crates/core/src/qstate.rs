//! Dense linear algebra on small complex Hermitian matrices and the bipartite
//! state manipulations everything else is built on.
//!
//! All fractional powers, logarithms and square roots go through a single
//! primitive, the Hermitian eigendecomposition ([`eig_hermitian`]).

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cabs, cr, Real, C};

/// Square complex matrix.
pub type ComplexMatrix<T> = DMatrix<C<T>>;

/// Builds a square matrix from row-major real and imaginary parts.
pub fn complex_matrix<T: Real>(re: &[Vec<T>], im: &[Vec<T>]) -> Result<ComplexMatrix<T>> {
    let n = re.len();
    if n == 0 || im.len() != n || re.iter().chain(im).any(|row| row.len() != n) {
        return Err(Error::BadShape(n));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| Complex::new(re[i][j], im[i][j])))
}

/// Largest entrywise modulus.
pub fn max_abs<T: Real>(m: &ComplexMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(cabs(*z)))
}

/// `max |M - M^H|` entrywise.
pub fn hermiticity_defect<T: Real>(m: &ComplexMatrix<T>) -> T {
    let n = m.nrows();
    let mut worst = T::zero();
    for i in 0..n {
        for j in i..n {
            worst = worst.max(cabs(m[(i, j)] - m[(j, i)].conj()));
        }
    }
    worst
}

/// `(M + M^H) / 2`.
pub fn hermitize<T: Real>(m: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    (m + m.adjoint()).map(|z| z * T::lit(0.5))
}

/// Kronecker product.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    a.kronecker(b)
}

pub fn identity<T: Real>(n: usize) -> ComplexMatrix<T> {
    DMatrix::identity(n, n)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Real> {
    pub eigenvalues: Vec<T>,
    /// Orthonormal eigenvectors as columns, ordered like `eigenvalues`.
    pub eigenvectors: ComplexMatrix<T>,
}

impl<T: Real> Spectrum<T> {
    /// Decomposes without the Hermiticity check. The input is symmetrized
    /// first, so tiny asymmetries from floating point products are harmless.
    pub fn of_unchecked(m: &ComplexMatrix<T>) -> Self {
        let eig = nalgebra::SymmetricEigen::new(hermitize(m));
        let n = m.nrows();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        Spectrum {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U diag(f(e)) U^H`.
    pub fn map(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.dim();
        let u = &self.eigenvectors;
        let fe: Vec<T> = self.eigenvalues.iter().map(|&e| f(e)).collect();
        DMatrix::from_fn(n, n, |i, j| {
            (0..n).fold(C::new(T::zero(), T::zero()), |acc, k| {
                acc + u[(i, k)] * u[(j, k)].conj() * fe[k]
            })
        })
    }

    /// Power restricted to the support: eigenvalues below the rank threshold
    /// map to zero whatever the sign of `t`.
    pub fn support_power(&self, t: T) -> ComplexMatrix<T> {
        let eps = T::lit(T::RANK_EPS);
        self.map(|e| if e < eps { T::zero() } else { e.powf(t) })
    }

    /// Projector onto the eigenvectors with eigenvalue below the rank threshold.
    pub fn kernel_projector(&self) -> ComplexMatrix<T> {
        let eps = T::lit(T::RANK_EPS);
        self.map(|e| if e < eps { T::one() } else { T::zero() })
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.map(|e| e)
    }
}

/// Hermitian eigendecomposition with eigenvalues sorted descending.
pub fn eig_hermitian<T: Real>(m: &ComplexMatrix<T>) -> Result<Spectrum<T>> {
    if !m.is_square() {
        return Err(Error::BadShape(m.nrows()));
    }
    let scale = T::one().max(max_abs(m));
    let defect = hermiticity_defect(m);
    if defect > T::lit(T::STATE_TOL) * scale {
        return Err(Error::NonHermitian(defect.as_f64()));
    }
    Ok(Spectrum::of_unchecked(m))
}

/// Eigenvalues only, descending. Skips the Hermiticity check.
pub fn hermitian_eigenvalues<T: Real>(m: &ComplexMatrix<T>) -> Vec<T> {
    let mut ev: Vec<T> = hermitize(m).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    ev
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    matrix: ComplexMatrix<T>,
    dims: Vec<usize>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates `matrix` as a state on subsystems of dimensions `dims`.
    ///
    /// The matrix is symmetrized, and eigenvalues in `[-PSD_TOL, 0)` are
    /// clamped to zero.
    pub fn new(matrix: ComplexMatrix<T>, dims: Vec<usize>) -> Result<Self> {
        Self::with_psd_tolerance(matrix, dims, T::PSD_TOL)
    }

    /// [`Self::new`] with eigenvalues down to `-psd_tol` accepted and clamped.
    pub fn with_psd_tolerance(matrix: ComplexMatrix<T>, dims: Vec<usize>, psd_tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::BadShape(matrix.nrows()));
        }
        let n = matrix.nrows();
        let prod: usize = dims.iter().product();
        if dims.is_empty() || prod != n {
            return Err(Error::DimensionMismatch(prod, n));
        }
        let tol = T::lit(T::STATE_TOL);
        let defect = hermiticity_defect(&matrix);
        if defect > tol {
            return Err(Error::NonHermitian(defect.as_f64()));
        }
        let matrix = hermitize(&matrix);
        let tr = matrix.trace().re;
        if (tr - T::one()).abs() > tol {
            return Err(Error::NotUnitTrace(tr.as_f64()));
        }
        let spec = Spectrum::of_unchecked(&matrix);
        let min = *spec.eigenvalues.last().expect("nonempty");
        if min < -T::lit(psd_tol) {
            return Err(Error::NotPsd(min.as_f64()));
        }
        let matrix = if min < T::zero() {
            hermitize(&spec.map(|e| e.max(T::zero())))
        } else {
            matrix
        };
        Ok(DensityMatrix { matrix, dims })
    }

    /// Wraps a matrix the caller knows to be a valid state.
    pub(crate) fn from_trusted(matrix: ComplexMatrix<T>, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.nrows());
        DensityMatrix { matrix, dims }
    }

    /// Single subsystem state of dimension `dim`.
    pub fn single(matrix: ComplexMatrix<T>) -> Result<Self> {
        let n = matrix.nrows();
        Self::new(matrix, vec![n])
    }

    /// `|psi><psi|` for a (not necessarily normalized) state vector.
    pub fn from_pure(psi: &[C<T>], dims: Vec<usize>) -> Result<Self> {
        let norm2 = psi.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        if norm2 <= T::zero() {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let n = psi.len();
        let m = DMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj() / cr(norm2));
        Self::new(m, dims)
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        let m = identity::<T>(n).map(|z| z / cr(T::from_usize(n).expect("small dim")));
        DensityMatrix { matrix: m, dims }
    }

    pub fn product(a: &Self, b: &Self) -> Self {
        let mut dims = a.dims.clone();
        dims.extend_from_slice(&b.dims);
        DensityMatrix {
            matrix: kron(&a.matrix, &b.matrix),
            dims,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn spectrum(&self) -> Spectrum<T> {
        Spectrum::of_unchecked(&self.matrix)
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// `U rho U^H`.
    pub fn conjugate(&self, u: &ComplexMatrix<T>) -> Self {
        let m = hermitize(&(u * &self.matrix * u.adjoint()));
        DensityMatrix {
            matrix: m,
            dims: self.dims.clone(),
        }
    }

    /// Entrywise max distance to another operator.
    pub fn max_distance(&self, other: &Self) -> T {
        max_abs(&(&self.matrix - &other.matrix))
    }
}

/// `U diag(e^t) U^H`.
///
/// For `t > 0` kernel eigenvalues (below the rank threshold) map to zero; for
/// `t <= 0` a kernel eigenvalue is an error, except for `t == 0` which gives
/// the identity.
pub fn matrix_power<T: Real>(rho: &DensityMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    if t == T::zero() {
        return Ok(identity(rho.dim()));
    }
    if t == T::one() {
        return Ok(rho.matrix.clone());
    }
    let spec = rho.spectrum();
    let eps = T::lit(T::RANK_EPS);
    if t < T::zero() && spec.eigenvalues.iter().any(|&e| e < eps) {
        return Err(Error::SingularPower(t.as_f64()));
    }
    Ok(spec.support_power(t))
}

/// Traces out every subsystem except `keep`.
pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: usize) -> Result<DensityMatrix<T>> {
    let dims = rho.dims();
    if keep >= dims.len() {
        return Err(Error::BadSubsystem {
            index: keep,
            count: dims.len(),
        });
    }
    let before: usize = dims[..keep].iter().product();
    let d = dims[keep];
    let after: usize = dims[keep + 1..].iter().product();
    let m = rho.matrix();
    let mut out = DMatrix::from_element(d, d, C::new(T::zero(), T::zero()));
    for i in 0..d {
        for j in 0..d {
            let mut acc = C::new(T::zero(), T::zero());
            for a in 0..before {
                for b in 0..after {
                    let r = (a * d + i) * after + b;
                    let c = (a * d + j) * after + b;
                    acc += m[(r, c)];
                }
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityMatrix::from_trusted(hermitize(&out), vec![d]))
}

/// Two-outcome rank-one projective measurement on a qubit, parametrized by
/// the Bloch angles of the first projector's ray `(cos θ/2, e^{iφ} sin θ/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveMeasurement<T: Real> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> ProjectiveMeasurement<T> {
    pub fn new(theta: T, phi: T) -> Self {
        ProjectiveMeasurement { theta, phi }.canonical()
    }

    /// Measurement in the computational basis.
    pub fn z() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn x() -> Self {
        Self::new(T::frac_pi_2(), T::zero())
    }

    pub fn y() -> Self {
        Self::new(T::frac_pi_2(), T::frac_pi_2())
    }

    /// Maps arbitrary angles onto `theta ∈ [0, π]`, `phi ∈ [0, 2π)` without
    /// changing the ray.
    pub fn canonical(self) -> Self {
        let two_pi = T::two_pi();
        let mut theta = self.theta % two_pi;
        let mut phi = self.phi;
        if theta < T::zero() {
            theta += two_pi;
        }
        if theta > T::pi() {
            // (θ, φ) and (2π - θ, φ + π) describe the same ray up to phase.
            theta = two_pi - theta;
            phi += T::pi();
        }
        phi %= two_pi;
        if phi < T::zero() {
            phi += two_pi;
        }
        if theta == T::zero() || theta == T::pi() {
            phi = T::zero();
        }
        ProjectiveMeasurement { theta, phi }
    }

    /// Unit Bloch vector of the first projector.
    pub fn direction(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Orthonormal rays `[|v⟩, |v⊥⟩]` of the two outcomes.
    pub fn rays(&self) -> [[C<T>; 2]; 2] {
        let half = T::lit(0.5);
        let (s, c) = (self.theta * half).sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        let e = Complex::new(cp, sp);
        [[cr(c), e * s], [-e.conj() * s, cr(c)]]
    }

    /// `[P_0, P_1]` with `P_0 = |v><v|`, `P_1 = I - P_0`.
    pub fn projectors(&self) -> [ComplexMatrix<T>; 2] {
        let half = T::lit(0.5);
        let v0 = cr((self.theta * half).cos());
        let st = (self.theta * half).sin();
        let v1 = Complex::new(st * self.phi.cos(), st * self.phi.sin());
        let p0 = DMatrix::from_row_slice(2, 2, &[v0 * v0.conj(), v0 * v1.conj(), v1 * v0.conj(), v1 * v1.conj()]);
        let p1 = identity::<T>(2) - &p0;
        [p0, p1]
    }
}

/// `Σ_i (I_A ⊗ P_i) ρ (I_A ⊗ P_i)` for a state whose last subsystem is a qubit.
pub fn apply_pvm_on_b<T: Real>(rho: &DensityMatrix<T>, m: &ProjectiveMeasurement<T>) -> Result<DensityMatrix<T>> {
    let dims = rho.dims();
    if dims.len() != 2 || dims[1] != 2 {
        return Err(Error::InvalidArgument(format!(
            "measurement on B needs dims [d, 2], got {dims:?}"
        )));
    }
    let id_a = identity::<T>(dims[0]);
    let mut out = DMatrix::from_element(rho.dim(), rho.dim(), C::new(T::zero(), T::zero()));
    for p in m.projectors() {
        let k = kron(&id_a, &p);
        out += &k * rho.matrix() * &k;
    }
    Ok(DensityMatrix::from_trusted(hermitize(&out), dims.to_vec()))
}

/// Uhlmann fidelity `‖√ρ √σ‖₁ = tr √(√ρ σ √ρ)`, clamped to `[0, 1]`.
pub fn fidelity<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let sqrt_rho = rho.spectrum().map(|e| e.max(T::zero()).sqrt());
    let inner = &sqrt_rho * sigma.matrix() * &sqrt_rho;
    let f = hermitian_eigenvalues(&inner)
        .into_iter()
        .fold(T::zero(), |acc, e| acc + e.max(T::zero()).sqrt());
    Ok(f.min(T::one()).max(T::zero()))
}

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Deterministic generator used for every seeded routine in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hilbert–Schmidt random state `G G^H / tr(G G^H)` on a single system.
pub fn random_density_matrix<T: Real>(dim: usize, seed: u64) -> DensityMatrix<T> {
    random_density_matrix_with(&mut seeded_rng(seed), vec![dim])
}

/// Hilbert–Schmidt random state on subsystems `dims`, drawing from `rng`.
pub fn random_density_matrix_with<T: Real, R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>) -> DensityMatrix<T> {
    let n: usize = dims.iter().product();
    let g = DMatrix::from_fn(n, n, |_, _| gaussian::<T, R>(rng));
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::from_trusted(hermitize(&w.map(|z| z / cr(tr))), dims)
}

/// Haar-random pure state on subsystems `dims`.
pub fn random_pure_state<T: Real, R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>) -> DensityMatrix<T> {
    let n: usize = dims.iter().product();
    let psi: Vec<C<T>> = (0..n).map(|_| gaussian::<T, R>(rng)).collect();
    DensityMatrix::from_pure(&psi, dims).expect("Gaussian vector is nonzero")
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix with the
/// phases of `R`'s diagonal divided out.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix<T> {
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian::<T, R>(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let n = cabs(d);
        let phase = if n > T::zero() { d / cr(n) } else { cr(T::one()) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}
