//! Quantum relative entropies of the Rényi and Tsallis families, in both the
//! sandwiched and traditional (Petz) varieties, with their special cases.
//!
//! | kind | quantity |
//! |------|----------|
//! | sandwiched Rényi | `log tr[(σ^s ρ σ^s)^α] / (α-1)`, `s = (1-α)/2α` |
//! | traditional Rényi | `log tr(ρ^α σ^{1-α}) / (α-1)` |
//! | Tsallis (either variety) | `(q - 1) / (α-1)` for the same trace functional `q` |
//! | min | sandwiched Rényi at `α = ½`, equal to `-2 log F(ρ, σ)` |
//! | collision | sandwiched Rényi at `α = 2` |
//! | linear | sandwiched Tsallis at `α = 2` |
//! | max | `inf{λ : ρ ≤ 2^λ σ}`, the `α → ∞` limit of sandwiched Rényi |
//! | von Neumann | `tr ρ (log ρ - log σ)`, the `α → 1` limit |
//!
//! Logarithms are base 2. Tsallis quantities carry no logarithm, so their
//! `α → 1` limit is the von Neumann relative entropy in natural units.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{hermitian_eigenvalues, ComplexMatrix, DensityMatrix, Spectrum};
use crate::scalar::{log2, Real};

/// Orders closer to one than this are evaluated with the von Neumann formula.
pub const ALPHA_ONE_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Renyi,
    Tsallis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variety {
    Sandwiched,
    Traditional,
}

/// Entropic order `α`, including the two limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Order<T> {
    Alpha(T),
    /// `α → 1`.
    One,
    /// `α → ∞`.
    Infinity,
}

/// Selects a relative-entropy functional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyKind<T> {
    pub family: Family,
    pub variety: Variety,
    pub order: Order<T>,
}

impl<T: Real> EntropyKind<T> {
    /// Validated constructor for a finite order. Orders within
    /// [`ALPHA_ONE_BAND`] of one become [`Order::One`].
    pub fn new(family: Family, variety: Variety, alpha: T) -> Result<Self> {
        let a = alpha.as_f64();
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidAlpha(a));
        }
        let order = if (a - 1.0).abs() < ALPHA_ONE_BAND {
            Order::One
        } else {
            Order::Alpha(alpha)
        };
        Ok(EntropyKind { family, variety, order })
    }

    pub fn with_order(family: Family, variety: Variety, order: Order<T>) -> Result<Self> {
        match order {
            Order::Alpha(a) => Self::new(family, variety, a),
            Order::One => Ok(EntropyKind { family, variety, order }),
            Order::Infinity => {
                if family == Family::Renyi && variety == Variety::Sandwiched {
                    Ok(Self::max())
                } else {
                    Err(Error::InvalidKind(
                        "the α → ∞ limit exists only for sandwiched Rényi".into(),
                    ))
                }
            }
        }
    }

    pub fn renyi(alpha: T) -> Result<Self> {
        Self::new(Family::Renyi, Variety::Sandwiched, alpha)
    }

    pub fn tsallis(alpha: T) -> Result<Self> {
        Self::new(Family::Tsallis, Variety::Sandwiched, alpha)
    }

    pub fn traditional_renyi(alpha: T) -> Result<Self> {
        Self::new(Family::Renyi, Variety::Traditional, alpha)
    }

    pub fn traditional_tsallis(alpha: T) -> Result<Self> {
        Self::new(Family::Tsallis, Variety::Traditional, alpha)
    }

    /// Sandwiched Rényi at `α = ½`.
    pub fn min() -> Self {
        Self::renyi(T::lit(0.5)).expect("valid order")
    }

    /// Sandwiched Rényi in the limit `α → ∞`.
    pub fn max() -> Self {
        EntropyKind {
            family: Family::Renyi,
            variety: Variety::Sandwiched,
            order: Order::Infinity,
        }
    }

    /// Sandwiched Rényi at `α = 2`.
    pub fn collision() -> Self {
        Self::renyi(T::lit(2.0)).expect("valid order")
    }

    /// Sandwiched Tsallis at `α = 2`.
    pub fn linear() -> Self {
        Self::tsallis(T::lit(2.0)).expect("valid order")
    }

    pub fn von_neumann() -> Self {
        EntropyKind {
            family: Family::Renyi,
            variety: Variety::Sandwiched,
            order: Order::One,
        }
    }

    /// Parses a command-line kind name (`renyi-s`, `renyi-t`, `tsallis-s`,
    /// `tsallis-t`, `min`, `max`, `collision`, `linear`, `vn`).
    pub fn parse(name: &str, alpha: Option<T>) -> Result<Self> {
        let need = |a: Option<T>| a.ok_or_else(|| Error::InvalidKind(format!("{name} needs --alpha")));
        match name {
            "renyi-s" => Self::renyi(need(alpha)?),
            "renyi-t" => Self::traditional_renyi(need(alpha)?),
            "tsallis-s" => Self::tsallis(need(alpha)?),
            "tsallis-t" => Self::traditional_tsallis(need(alpha)?),
            "min" => Ok(Self::min()),
            "max" => Ok(Self::max()),
            "collision" => Ok(Self::collision()),
            "linear" => Ok(Self::linear()),
            "vn" => Ok(Self::von_neumann()),
            other => Err(Error::InvalidKind(format!("unknown kind '{other}'"))),
        }
    }

    /// Finite order, if any.
    pub fn alpha(&self) -> Option<T> {
        match self.order {
            Order::Alpha(a) => Some(a),
            _ => None,
        }
    }

    /// Whether the data-processing inequality is known to hold: `α ≥ ½` for
    /// the sandwiched variety, `α ≤ 2` for the traditional one.
    pub fn in_dpi_range(&self) -> bool {
        match (self.variety, self.order) {
            (_, Order::One) => true,
            (Variety::Sandwiched, Order::Infinity) => true,
            (Variety::Traditional, Order::Infinity) => false,
            (Variety::Sandwiched, Order::Alpha(a)) => a.as_f64() >= 0.5,
            (Variety::Traditional, Order::Alpha(a)) => a.as_f64() <= 2.0,
        }
    }

    /// Same variety and order in the other family.
    pub fn with_family(&self, family: Family) -> Self {
        EntropyKind { family, ..*self }
    }

    /// Maps a Rényi value of this variety and order to the Tsallis value.
    pub fn tsallis_from_renyi(&self, renyi: ExtendedReal<T>) -> ExtendedReal<T> {
        match (renyi, self.order) {
            (ExtendedReal::Infinite, _) => ExtendedReal::Infinite,
            (ExtendedReal::Finite(r), Order::Alpha(a)) => {
                let am1 = a - T::one();
                ExtendedReal::Finite(((am1 * r * T::ln_2()).exp() - T::one()) / am1)
            }
            (ExtendedReal::Finite(r), Order::One) => ExtendedReal::Finite(r * T::ln_2()),
            (ExtendedReal::Finite(_), Order::Infinity) => ExtendedReal::Infinite,
        }
    }

    /// Inverse of [`Self::tsallis_from_renyi`].
    pub fn renyi_from_tsallis(&self, tsallis: ExtendedReal<T>) -> ExtendedReal<T> {
        match (tsallis, self.order) {
            (ExtendedReal::Infinite, _) => ExtendedReal::Infinite,
            (ExtendedReal::Finite(t), Order::Alpha(a)) => {
                let am1 = a - T::one();
                let q = T::one() + am1 * t;
                if q <= T::zero() {
                    ExtendedReal::Infinite
                } else {
                    ExtendedReal::Finite(log2(q) / am1)
                }
            }
            (ExtendedReal::Finite(t), Order::One) => ExtendedReal::Finite(t / T::ln_2()),
            (ExtendedReal::Finite(_), Order::Infinity) => ExtendedReal::Infinite,
        }
    }

    /// Short name as used on the command line.
    pub fn cli_name(&self) -> String {
        let v = match self.variety {
            Variety::Sandwiched => "s",
            Variety::Traditional => "t",
        };
        match (self.family, self.order) {
            (Family::Renyi, Order::Infinity) => "max".into(),
            (Family::Renyi, Order::One) => "vn".into(),
            (Family::Tsallis, Order::One) => format!("tsallis-{v}"),
            (Family::Renyi, _) => format!("renyi-{v}"),
            (Family::Tsallis, _) => format!("tsallis-{v}"),
        }
    }
}

impl<T: Real> fmt::Display for EntropyKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            Order::Alpha(a) => write!(f, "{}(alpha={})", self.cli_name(), a.as_f64()),
            Order::One => write!(f, "{}(alpha=1)", self.cli_name()),
            Order::Infinity => write!(f, "max"),
        }
    }
}

/// A real number or `+∞`.
/// Serialized as a number, or as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal<T> {
    Finite(T),
    Infinite,
}

impl<T: Real + Serialize> Serialize for ExtendedReal<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(v) => v.serialize(s),
            ExtendedReal::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for ExtendedReal<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire<T> {
            Value(T),
            Marker(String),
        }
        match Wire::<T>::deserialize(d)? {
            Wire::Value(v) => Ok(ExtendedReal::Finite(v)),
            Wire::Marker(m) if m == "inf" => Ok(ExtendedReal::Infinite),
            Wire::Marker(m) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {m:?}"
            ))),
        }
    }
}

impl<T: Real> ExtendedReal<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::Infinite => None,
        }
    }

    /// Finite value, or `fallback` for `+∞`.
    pub fn or(&self, fallback: T) -> T {
        self.finite().unwrap_or(fallback)
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            ExtendedReal::Finite(v) => v.as_f64(),
            ExtendedReal::Infinite => f64::INFINITY,
        }
    }
}

impl<T: Real> PartialOrd for ExtendedReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => a.partial_cmp(b),
            (ExtendedReal::Infinite, ExtendedReal::Infinite) => Some(Equal),
            (ExtendedReal::Infinite, _) => Some(Greater),
            (_, ExtendedReal::Infinite) => Some(Less),
        }
    }
}

/// Natural log of a trace functional `q ≥ 0`, or `None` for `q = 0`.
pub(crate) type LnTrace<T> = Option<T>;

/// Turns `ln q` into the entropy value for the family.
pub(crate) fn value_from_ln_trace<T: Real>(family: Family, alpha: T, ln_q: LnTrace<T>) -> ExtendedReal<T> {
    let am1 = alpha - T::one();
    match ln_q {
        // q = 0 can only be reached for α < 1, where (log q)/(α-1) = +∞.
        None => {
            if am1 < T::zero() {
                ExtendedReal::Infinite
            } else {
                match family {
                    Family::Renyi => ExtendedReal::Infinite,
                    Family::Tsallis => ExtendedReal::Finite(-T::one() / am1),
                }
            }
        }
        Some(lq) => match family {
            Family::Renyi => ExtendedReal::Finite(lq / T::ln_2() / am1),
            Family::Tsallis => ExtendedReal::Finite((lq.exp() - T::one()) / am1),
        },
    }
}

/// `ln Σ μ_i^α` over the nonnegative `μ_i`, computed without overflow.
pub(crate) fn ln_power_sum<T: Real>(mu: &[T], alpha: T) -> LnTrace<T> {
    let eps = T::lit(T::RANK_EPS);
    let top = mu.iter().copied().fold(T::zero(), T::max);
    if top < eps {
        return None;
    }
    let s = mu
        .iter()
        .filter(|&&m| m >= eps)
        .fold(T::zero(), |acc, &m| acc + (m / top).powf(alpha));
    Some(alpha * top.ln() + s.ln())
}

/// Weight of `rho` on the kernel of `sigma`'s spectrum.
fn kernel_weight<T: Real>(rho: &ComplexMatrix<T>, sigma: &Spectrum<T>) -> T {
    let eps = T::lit(T::RANK_EPS);
    let n = sigma.dim();
    let mut w = T::zero();
    for (k, &e) in sigma.eigenvalues.iter().enumerate() {
        if e < eps {
            let v = sigma.eigenvectors.column(k);
            let mut acc = T::zero();
            for i in 0..n {
                for j in 0..n {
                    acc += (v[i].conj() * rho[(i, j)] * v[j]).re;
                }
            }
            w += acc;
        }
    }
    w
}

fn support_violated<T: Real>(rho: &ComplexMatrix<T>, sigma: &Spectrum<T>) -> bool {
    kernel_weight(rho, sigma) > T::lit(T::RANK_EPS)
}

fn check_dims<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    Ok(())
}

/// `S(ρ) = -tr ρ log ρ`.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    shannon_bits(&rho.eigenvalues())
}

/// Shannon entropy in bits of a (sub)probability vector; zeros contribute 0.
pub fn shannon_bits<T: Real>(p: &[T]) -> T {
    p.iter()
        .filter(|&&x| x > T::zero())
        .fold(T::zero(), |acc, &x| acc - x * log2(x))
}

/// `S(ρ‖σ) = -S(ρ) - tr ρ log σ`, `+∞` unless `supp ρ ⊆ supp σ`.
pub fn von_neumann_relative<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<ExtendedReal<T>> {
    check_dims(rho, sigma)?;
    let sig = sigma.spectrum();
    if support_violated(rho.matrix(), &sig) {
        return Ok(ExtendedReal::Infinite);
    }
    let eps = T::lit(T::RANK_EPS);
    let log_sigma = sig.map(|e| if e < eps { T::zero() } else { log2(e) });
    let cross = (rho.matrix() * log_sigma).trace().re;
    let s = -von_neumann_entropy(rho) - cross;
    Ok(ExtendedReal::Finite(s))
}

/// `S_max(ρ‖σ) = log λ_max(σ^{-1/2} ρ σ^{-1/2})` on the support of `σ`.
pub fn relative_max_entropy<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<ExtendedReal<T>> {
    check_dims(rho, sigma)?;
    let sig = sigma.spectrum();
    if support_violated(rho.matrix(), &sig) {
        return Ok(ExtendedReal::Infinite);
    }
    let inv_sqrt = sig.support_power(T::lit(-0.5));
    let m = &inv_sqrt * rho.matrix() * &inv_sqrt;
    let top = hermitian_eigenvalues(&m)[0];
    Ok(ExtendedReal::Finite(log2(top)))
}

/// Natural log of the trace functional of the given variety at finite `α`,
/// `Err(())` standing for a support violation (value `+∞`).
pub(crate) fn ln_trace_functional<T: Real>(
    rho: &ComplexMatrix<T>,
    sigma: &Spectrum<T>,
    variety: Variety,
    alpha: T,
) -> std::result::Result<LnTrace<T>, ()> {
    if alpha > T::one() && support_violated(rho, sigma) {
        return Err(());
    }
    match variety {
        Variety::Sandwiched => {
            let s = (T::one() - alpha) / (alpha + alpha);
            let p = sigma.support_power(s);
            let m = &p * rho * &p;
            let mu: Vec<T> = hermitian_eigenvalues(&m)
                .into_iter()
                .map(|e| e.max(T::zero()))
                .collect();
            Ok(ln_power_sum(&mu, alpha))
        }
        Variety::Traditional => {
            let rho_a = Spectrum::of_unchecked(rho).support_power(alpha);
            let sig_b = sigma.support_power(T::one() - alpha);
            let q = (rho_a * sig_b).trace().re;
            if q < T::lit(T::RANK_EPS) {
                Ok(None)
            } else {
                Ok(Some(q.ln()))
            }
        }
    }
}

/// Relative entropy of `rho` with respect to `sigma` for any kind.
pub fn relative_entropy<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    kind: &EntropyKind<T>,
) -> Result<ExtendedReal<T>> {
    check_dims(rho, sigma)?;
    match kind.order {
        Order::One => {
            let s = von_neumann_relative(rho, sigma)?;
            Ok(match kind.family {
                Family::Renyi => s,
                Family::Tsallis => kind.tsallis_from_renyi(s),
            })
        }
        Order::Infinity => {
            if kind.family != Family::Renyi || kind.variety != Variety::Sandwiched {
                return Err(Error::InvalidKind(kind.to_string()));
            }
            relative_max_entropy(rho, sigma)
        }
        Order::Alpha(alpha) => {
            if alpha <= T::zero() {
                return Err(Error::InvalidAlpha(alpha.as_f64()));
            }
            let sig = sigma.spectrum();
            Ok(match ln_trace_functional(rho.matrix(), &sig, kind.variety, alpha) {
                Err(()) => ExtendedReal::Infinite,
                Ok(lq) => value_from_ln_trace(kind.family, alpha, lq),
            })
        }
    }
}

/// Result of probing the `α → 1` limit on one pair of states.
#[derive(Debug, Clone, Copy)]
pub struct ContinuityReport<T> {
    pub below: ExtendedReal<T>,
    pub above: ExtendedReal<T>,
    /// Von Neumann limit in the family's units (bits for Rényi, nats for Tsallis).
    pub limit: ExtendedReal<T>,
    pub max_deviation: T,
    pub passed: bool,
}

/// Offset from one at which the continuity harness evaluates.
pub const CONTINUITY_OFFSET: f64 = 1e-4;
/// Allowed deviation from the von Neumann limit.
pub const CONTINUITY_TOL: f64 = 1e-3;

/// Evaluates the kind at `α = 1 ± 1e-4` and compares with the von Neumann limit.
pub fn alpha_continuity_check<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    family: Family,
    variety: Variety,
) -> Result<ContinuityReport<T>> {
    let h = T::lit(CONTINUITY_OFFSET);
    let below = relative_entropy(rho, sigma, &EntropyKind::new(family, variety, T::one() - h)?)?;
    let above = relative_entropy(rho, sigma, &EntropyKind::new(family, variety, T::one() + h)?)?;
    let limit = relative_entropy(rho, sigma, &EntropyKind::with_order(family, variety, Order::One)?)?;
    let dev = |x: ExtendedReal<T>| match (x, limit) {
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => (a - b).abs(),
        (ExtendedReal::Infinite, ExtendedReal::Infinite) => T::zero(),
        _ => T::max_value().expect("bounded"),
    };
    let max_deviation = dev(below).max(dev(above));
    Ok(ContinuityReport {
        below,
        above,
        limit,
        max_deviation,
        passed: max_deviation <= T::lit(CONTINUITY_TOL),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{fidelity, random_density_matrix_with, seeded_rng};
    use crate::scalar::cr;
    use crate::states;
    use nalgebra::DMatrix;

    fn diag(v: &[f64]) -> DensityMatrix<f64> {
        let m = DMatrix::from_fn(v.len(), v.len(), |i, j| cr(if i == j { v[i] } else { 0.0 }));
        DensityMatrix::single(m).unwrap()
    }

    fn all_kinds() -> Vec<EntropyKind<f64>> {
        let mut v = vec![
            EntropyKind::min(),
            EntropyKind::max(),
            EntropyKind::collision(),
            EntropyKind::linear(),
            EntropyKind::von_neumann(),
        ];
        for &a in &[0.3, 0.7, 1.5, 3.0] {
            v.push(EntropyKind::renyi(a).unwrap());
            v.push(EntropyKind::tsallis(a).unwrap());
            v.push(EntropyKind::traditional_renyi(a).unwrap());
            v.push(EntropyKind::traditional_tsallis(a).unwrap());
        }
        v
    }

    /// Binary entropy evaluated from its scalar formula.
    fn h2(p: f64) -> f64 {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }

    #[test]
    fn identical_states_give_zero() {
        let mut rng = seeded_rng(12);
        let rho: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2, 2]);
        for kind in all_kinds() {
            let v = relative_entropy(&rho, &rho, &kind).unwrap().finite().unwrap();
            assert!(v.abs() < 1e-9, "{kind}: {v}");
        }
    }

    #[test]
    fn collision_entropy_against_uniform() {
        // σ^{-1/4} ρ σ^{-1/4} = √2 |0><0|, its square has trace 2, log2(2)/1 = 1.
        let v = relative_entropy(&diag(&[1.0, 0.0]), &diag(&[0.5, 0.5]), &EntropyKind::collision()).unwrap();
        assert!((v.finite().unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn disjoint_supports_are_infinite() {
        let zero = diag(&[1.0, 0.0]);
        let one = diag(&[0.0, 1.0]);
        for kind in all_kinds() {
            assert_eq!(
                relative_entropy(&zero, &one, &kind).unwrap(),
                ExtendedReal::Infinite,
                "{kind}"
            );
        }
    }

    #[test]
    fn kernel_rule_only_where_the_formula_needs_it() {
        let mixed = diag(&[0.5, 0.5]);
        let pure = diag(&[1.0, 0.0]);
        assert_eq!(von_neumann_relative(&mixed, &pure).unwrap(), ExtendedReal::Infinite);
        assert_eq!(
            relative_entropy(&mixed, &pure, &EntropyKind::renyi(2.0).unwrap()).unwrap(),
            ExtendedReal::Infinite
        );
        // α < 1: σ enters through a positive power and the value stays finite.
        let v = relative_entropy(&mixed, &pure, &EntropyKind::traditional_renyi(0.5).unwrap())
            .unwrap()
            .finite()
            .unwrap();
        // tr(ρ^½ σ^½) = √½, log(√½)/(-½) = 1
        assert!((v - 1.0).abs() < 1e-13);
    }

    #[test]
    fn min_entropy_is_minus_two_log_fidelity() {
        let mut rng = seeded_rng(77);
        for _ in 0..200 {
            let rho: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2, 2]);
            let sigma: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2, 2]);
            let smin = relative_entropy(&rho, &sigma, &EntropyKind::min())
                .unwrap()
                .finite()
                .unwrap();
            let f = fidelity(&rho, &sigma).unwrap();
            assert!((smin + 2.0 * f.log2()).abs() < 1e-9);
        }
    }

    #[test]
    fn von_neumann_values() {
        assert!(von_neumann_entropy(&diag(&[1.0, 0.0])).abs() < 1e-15);
        assert!((von_neumann_entropy(&diag(&[0.5, 0.5])) - 1.0).abs() < 1e-15);
        let v = von_neumann_entropy(&diag(&[0.75, 0.25]));
        assert!((v - h2(0.75)).abs() < 1e-14);
        assert!((v - 0.811_278_124_459_132_8).abs() < 1e-12);

        let r = von_neumann_relative(&diag(&[0.75, 0.25]), &diag(&[0.5, 0.5]))
            .unwrap()
            .finite()
            .unwrap();
        assert!((r - (1.0 - h2(0.75))).abs() < 1e-14);
        assert!((r - 0.188_721_875_540_867).abs() < 1e-12);
    }

    #[test]
    fn max_entropy_values() {
        let mixed = diag(&[0.5, 0.5]);
        let zero = diag(&[1.0, 0.0]);
        assert!(relative_max_entropy(&mixed, &mixed).unwrap().finite().unwrap().abs() < 1e-14);
        let v = relative_max_entropy(&zero, &mixed).unwrap().finite().unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn max_entropy_is_the_large_alpha_limit() {
        let mut rng = seeded_rng(5150);
        let big = EntropyKind::renyi(1e3).unwrap();
        for _ in 0..100 {
            let rho: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2, 2]);
            let sigma: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2, 2]);
            let smax = relative_max_entropy(&rho, &sigma).unwrap().finite().unwrap();
            let s = relative_entropy(&rho, &sigma, &big).unwrap().finite().unwrap();
            assert!((smax - s).abs() < 5e-3, "{smax} vs {s}");
        }
    }

    #[test]
    fn continuity_at_alpha_one() {
        let mut rng = seeded_rng(31);
        let combos = [
            (Family::Renyi, Variety::Sandwiched),
            (Family::Renyi, Variety::Traditional),
            (Family::Tsallis, Variety::Sandwiched),
            (Family::Tsallis, Variety::Traditional),
        ];
        let w = states::werner::<f64>(0.5);
        let quarter = DensityMatrix::maximally_mixed(vec![2, 2]);
        for _ in 0..3 {
            let rho: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2]);
            let sigma: DensityMatrix<f64> = random_density_matrix_with(&mut rng, vec![2]);
            for &(f, v) in &combos {
                let r = alpha_continuity_check(&rho, &sigma, f, v).unwrap();
                assert!(r.passed, "{f:?} {v:?}: {}", r.max_deviation);
                let r = alpha_continuity_check(&rho, &rho, f, v).unwrap();
                assert!(r.below.finite().unwrap().abs() < 1e-9);
                let r = alpha_continuity_check(&w, &quarter, f, v).unwrap();
                assert!(r.passed);
            }
        }
    }

    #[test]
    fn near_one_orders_route_to_von_neumann() {
        let k = EntropyKind::<f64>::renyi(1.0 + 1e-7).unwrap();
        assert_eq!(k.order, Order::One);
        assert!(matches!(EntropyKind::<f64>::renyi(0.0), Err(Error::InvalidAlpha(_))));
        assert!(EntropyKind::<f64>::with_order(Family::Tsallis, Variety::Sandwiched, Order::Infinity).is_err());
        assert!(EntropyKind::<f64>::with_order(Family::Renyi, Variety::Traditional, Order::Infinity).is_err());
    }

    #[test]
    fn parse_cli_names() {
        assert_eq!(EntropyKind::<f64>::parse("min", None).unwrap(), EntropyKind::min());
        assert_eq!(
            EntropyKind::<f64>::parse("linear", None).unwrap(),
            EntropyKind::linear()
        );
        assert_eq!(
            EntropyKind::<f64>::parse("renyi-t", Some(0.7)).unwrap(),
            EntropyKind::traditional_renyi(0.7).unwrap()
        );
        assert!(EntropyKind::<f64>::parse("renyi-s", None).is_err());
        assert!(EntropyKind::<f64>::parse("bogus", Some(2.0)).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let a = diag(&[1.0, 0.0]);
        let b = DensityMatrix::<f64>::maximally_mixed(vec![2, 2]);
        assert!(matches!(
            relative_entropy(&a, &b, &EntropyKind::collision()),
            Err(Error::DimensionMismatch(2, 4))
        ));
    }
}
