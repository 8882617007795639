//! Standard one- and two-qubit states and operators.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::qstate::{identity, ComplexMatrix, DensityMatrix};
use crate::scalar::{cr, Real, C};

pub fn pauli_x<T: Real>() -> ComplexMatrix<T> {
    let (o, l) = (cr(T::zero()), cr(T::one()));
    DMatrix::from_row_slice(2, 2, &[o, l, l, o])
}

pub fn pauli_y<T: Real>() -> ComplexMatrix<T> {
    let o = cr(T::zero());
    let i = Complex::new(T::zero(), T::one());
    DMatrix::from_row_slice(2, 2, &[o, -i, i, o])
}

pub fn pauli_z<T: Real>() -> ComplexMatrix<T> {
    let (o, l) = (cr(T::zero()), cr(T::one()));
    DMatrix::from_row_slice(2, 2, &[l, o, o, -l])
}

/// `½(I + r·σ)`; a valid state whenever `|r| ≤ 1`.
pub fn bloch_matrix<T: Real>(r: [T; 3]) -> ComplexMatrix<T> {
    let h = T::lit(0.5);
    let (x, y, z) = (r[0] * h, r[1] * h, r[2] * h);
    DMatrix::from_row_slice(2, 2, &[cr(h + z), Complex::new(x, -y), Complex::new(x, y), cr(h - z)])
}

/// Bloch vector `tr(ρ σ_k)` of a qubit state.
pub fn bloch_vector<T: Real>(rho: &ComplexMatrix<T>) -> [T; 3] {
    let two = T::lit(2.0);
    [
        rho[(0, 1)].re * two,
        rho[(1, 0)].im * two,
        rho[(0, 0)].re - rho[(1, 1)].re,
    ]
}

fn ket<T: Real>(amps: [f64; 4]) -> Vec<C<T>> {
    amps.iter().map(|&a| cr(T::lit(a))).collect()
}

fn projector<T: Real>(psi: &[C<T>]) -> ComplexMatrix<T> {
    DMatrix::from_fn(psi.len(), psi.len(), |i, j| psi[i] * psi[j].conj())
}

fn mix<T: Real>(p: T, a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> DensityMatrix<T> {
    let m = a.map(|z| z * p) + b.map(|z| z * (T::one() - p));
    DensityMatrix::from_trusted(m, vec![2, 2])
}

fn bell_projector<T: Real>(which: BellState) -> ComplexMatrix<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match which {
        BellState::PhiPlus => [h, 0.0, 0.0, h],
        BellState::PhiMinus => [h, 0.0, 0.0, -h],
        BellState::PsiPlus => [0.0, h, h, 0.0],
        BellState::PsiMinus => [0.0, h, -h, 0.0],
    };
    projector(&ket::<T>(amps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

pub fn bell<T: Real>(which: BellState) -> DensityMatrix<T> {
    DensityMatrix::from_trusted(bell_projector(which), vec![2, 2])
}

pub fn bell_phi_plus<T: Real>() -> DensityMatrix<T> {
    bell(BellState::PhiPlus)
}

/// `√λ|00⟩ + √(1-λ)|11⟩`.
pub fn schmidt_pure<T: Real>(lambda: T) -> DensityMatrix<T> {
    let lambda = lambda.max(T::zero()).min(T::one());
    let o = cr(T::zero());
    let psi = [cr(lambda.sqrt()), o, o, cr((T::one() - lambda).sqrt())];
    DensityMatrix::from_trusted(projector(&psi), vec![2, 2])
}

/// `p|ψ⁻⟩⟨ψ⁻| + (1-p) I/4`.
pub fn werner<T: Real>(p: T) -> DensityMatrix<T> {
    let quarter = identity::<T>(4).map(|z| z * T::lit(0.25));
    mix(p, &bell_projector(BellState::PsiMinus), &quarter)
}

/// `p|φ⁺⟩⟨φ⁺| + (1-p)|φ⁻⟩⟨φ⁻|`.
pub fn bell_mixture<T: Real>(p: T) -> DensityMatrix<T> {
    mix(
        p,
        &bell_projector(BellState::PhiPlus),
        &bell_projector(BellState::PhiMinus),
    )
}

/// `p|φ⁺⟩⟨φ⁺| + (1-p)|00⟩⟨00|`.
pub fn bell_noise<T: Real>(p: T) -> DensityMatrix<T> {
    mix(
        p,
        &bell_projector(BellState::PhiPlus),
        &projector(&ket::<T>([1.0, 0.0, 0.0, 0.0])),
    )
}

/// `Σ_i p_i ρ_i^A ⊗ |i⟩⟨i|^B` in the computational basis of B.
pub fn quantum_classical<T: Real>(weights: [T; 2], a_states: [&DensityMatrix<T>; 2]) -> DensityMatrix<T> {
    let mut m = DMatrix::zeros(4, 4);
    for (i, (&w, a)) in weights.iter().zip(a_states).enumerate() {
        let mut ket_b = DMatrix::zeros(2, 2);
        ket_b[(i, i)] = cr(T::one());
        m += crate::qstate::kron(a.matrix(), &ket_b).map(|z| z * w);
    }
    let total = weights[0] + weights[1];
    DensityMatrix::from_trusted(m.map(|z| z / cr(total)), vec![2, 2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_valid_states() {
        for &p in &[0.0, 0.25, 0.5, 0.9, 1.0] {
            for rho in [werner::<f64>(p), bell_mixture(p), bell_noise(p), schmidt_pure(p)] {
                DensityMatrix::new(rho.matrix().clone(), vec![2, 2]).unwrap();
            }
        }
    }

    #[test]
    fn bloch_round_trip() {
        let r = [0.1, -0.4, 0.3];
        let v = bloch_vector(&bloch_matrix::<f64>(r));
        for k in 0..3 {
            assert!((v[k] - r[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn pauli_algebra() {
        let x = pauli_x::<f64>();
        let y = pauli_y::<f64>();
        let z = pauli_z::<f64>();
        let i = Complex::new(0.0, 1.0);
        assert!((&x * &y - z.map(|e| e * i)).norm() < 1e-15);
    }
}
