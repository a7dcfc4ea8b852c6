//! Dense finite-dimensional quantum kinematics.
//!
//! Pure states, orthogonal projectors, Born-rule statistics, conditional
//! (sequential) measurement with state reduction, and the disturbance
//! figures `c = Tr(A B)`, `sqrt(c(1 - c))` and `-ln c` that quantify how a
//! first projective measurement spoils a second, non-commuting one.
//!
//! Dimensions here are tiny (2, 4, 5), so everything is a dense
//! `nalgebra` matrix over `Complex64`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

/// Allowed deviation of `‖ψ‖²` from one.
pub const TOL_NORM: f64 = 1e-12;
/// Allowed Hermiticity / idempotence defect of a projector.
pub const TOL_PROJECTOR: f64 = 1e-12;
/// Slack outside `[0, 1]` tolerated before a probability is clamped.
pub const TOL_PROBABILITY: f64 = 1e-12;
/// Default threshold below which an event counts as zero-probability.
pub const EPS_COND: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("non-finite amplitude or matrix entry")]
    NotFinite,
    #[error("state is not normalized: |psi|^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },
    #[error("`{label}` is not a projector (hermiticity defect {hermitian}, idempotence defect {idempotent})")]
    NotProjector {
        label: String,
        hermitian: f64,
        idempotent: f64,
    },
    #[error("conditioning on `{label}` which has probability {probability:e}")]
    ZeroProbabilityCondition { label: String, probability: f64 },
    #[error("internal consistency: probability {value} outside [0, 1]")]
    ProbabilityOutOfRange { value: f64 },
    #[error("`{label}` must be rank one, trace is {trace}")]
    NotRankOne { label: String, trace: f64 },
}

pub type Result<T> = std::result::Result<T, QuantumError>;

fn check_probability(raw: f64) -> Result<f64> {
    if !raw.is_finite() || !(-TOL_PROBABILITY..=1.0 + TOL_PROBABILITY).contains(&raw) {
        return Err(QuantumError::ProbabilityOutOfRange { value: raw });
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Rounds probabilities within [`TOL_PROBABILITY`] of 0 or 1 to the endpoint.
/// Used before `sqrt(p(1 - p))`, which would otherwise turn rounding noise of
/// order 1e-16 into spreads of order 1e-8.
fn snap_endpoints(p: f64) -> f64 {
    if p <= TOL_PROBABILITY {
        0.0
    } else if p >= 1.0 - TOL_PROBABILITY {
        1.0
    } else {
        p
    }
}

/// A normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Accepts amplitudes that are already normalized within [`TOL_NORM`].
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let amplitudes = DVector::from_vec(amplitudes);
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(QuantumError::NotFinite);
        }
        let norm_sqr = amplitudes.norm_squared();
        if (norm_sqr - 1.0).abs() > TOL_NORM {
            return Err(QuantumError::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalize(amplitudes: Vec<C64>) -> Result<Self> {
        let mut amplitudes = DVector::from_vec(amplitudes);
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(QuantumError::NotFinite);
        }
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(QuantumError::ZeroNorm);
        }
        amplitudes.unscale_mut(norm);
        Ok(Self { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalize(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[index] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amplitudes.as_slice()
    }

    pub fn as_vector(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Equality as rays: `|⟨a|b⟩| = 1` within `tol`, ignoring global phase.
    pub fn same_ray(&self, other: &StateVector, tol: f64) -> bool {
        match self.inner(other) {
            Ok(overlap) => (overlap.norm() - 1.0).abs() <= tol,
            Err(_) => false,
        }
    }
}

/// A Hermitian idempotent matrix, tagged with a label used in diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    label: String,
    matrix: DMatrix<C64>,
}

impl Projector {
    /// Validates Hermiticity and idempotence within [`TOL_PROJECTOR`].
    pub fn new(label: impl Into<String>, matrix: DMatrix<C64>) -> Result<Self> {
        let label = label.into();
        if !matrix.is_square() {
            return Err(QuantumError::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if matrix
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(QuantumError::NotFinite);
        }
        let hermitian = max_entry(&(&matrix - matrix.adjoint()));
        let idempotent = max_entry(&(&matrix * &matrix - &matrix));
        if hermitian > TOL_PROJECTOR || idempotent > TOL_PROJECTOR {
            return Err(QuantumError::NotProjector {
                label,
                hermitian,
                idempotent,
            });
        }
        Ok(Self { label, matrix })
    }

    /// Rank-one projector `|k⟩⟨k|` onto the normalized direction of `ket`.
    pub fn onto(label: impl Into<String>, ket: &[C64]) -> Result<Self> {
        let ket = StateVector::normalize(ket.to_vec())?;
        let v = ket.as_vector();
        Self::new(label, v * v.adjoint())
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            label: "1".to_string(),
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            label: "0".to_string(),
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `1 - P`.
    pub fn complement(&self) -> Self {
        Self {
            label: format!("1-{}", self.label),
            matrix: DMatrix::identity(self.dim(), self.dim()) - &self.matrix,
        }
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Projector) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut matrix = DMatrix::zeros(n + m, n + m);
        matrix.view_mut((0, 0), (n, n)).copy_from(&self.matrix);
        matrix.view_mut((n, n), (m, m)).copy_from(&other.matrix);
        Self {
            label: format!("{}+{}", self.label, other.label),
            matrix,
        }
    }

    /// Product `self · other` as a plain matrix (generally not a projector).
    pub fn product(&self, other: &Projector) -> Result<DMatrix<C64>> {
        check_dims(self.dim(), other.dim())?;
        Ok(&self.matrix * &other.matrix)
    }

    pub fn apply(&self, psi: &StateVector) -> Result<DVector<C64>> {
        check_dims(self.dim(), psi.dim())?;
        Ok(&self.matrix * psi.as_vector())
    }
}

/// Kronecker product of states or operators.
pub trait Tensor {
    fn tensor(&self, other: &Self) -> Self;
}

impl Tensor for StateVector {
    fn tensor(&self, other: &Self) -> Self {
        Self {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }
}

impl Tensor for Projector {
    fn tensor(&self, other: &Self) -> Self {
        Self {
            label: format!("{}⊗{}", self.label, other.label),
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }
}

pub fn tensor<T: Tensor>(a: &T, b: &T) -> T {
    a.tensor(b)
}

/// Measurement-disturbance figures for a rank-one first measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisturbanceMetrics {
    /// `Tr(P_first P_second)`: probability the second event survives the first.
    pub c: f64,
    /// Spread `sqrt(c(1 - c))` of the second projector after the first fires.
    pub sigma_f: f64,
    /// `-ln c`; `+∞` when `c = 0`.
    pub entropic_bound: f64,
}

impl DisturbanceMetrics {
    pub fn from_overlap(c: f64) -> Self {
        let entropic_bound = if c <= 0.0 {
            f64::INFINITY
        } else if c >= 1.0 {
            0.0
        } else {
            -c.ln()
        };
        Self {
            c,
            sigma_f: (c * (1.0 - c)).sqrt(),
            entropic_bound,
        }
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(QuantumError::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn max_entry(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `⟨ψ|A|ψ⟩`.
pub fn born_probability(psi: &StateVector, a: &Projector) -> Result<f64> {
    let projected = a.apply(psi)?;
    check_probability(psi.as_vector().dotc(&projected).re)
}

/// Probability of `B` after `A` has fired: `⟨ψ|ABA|ψ⟩ / ⟨ψ|A|ψ⟩`.
pub fn conditional_probability(psi: &StateVector, a: &Projector, b: &Projector) -> Result<f64> {
    conditional_probability_with(psi, a, b, EPS_COND)
}

pub fn conditional_probability_with(
    psi: &StateVector,
    a: &Projector,
    b: &Projector,
    eps_cond: f64,
) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    let reduced = a.apply(psi)?;
    let p_a = check_probability(reduced.norm_squared())?;
    if p_a <= eps_cond {
        return Err(QuantumError::ZeroProbabilityCondition {
            label: a.label().to_string(),
            probability: p_a,
        });
    }
    let aba = reduced.dotc(&(b.matrix() * &reduced)).re;
    check_probability(aba / p_a)
}

/// `A|ψ⟩ / ‖A|ψ⟩‖`.
pub fn post_measurement_state(psi: &StateVector, a: &Projector) -> Result<StateVector> {
    post_measurement_state_with(psi, a, EPS_COND)
}

pub fn post_measurement_state_with(
    psi: &StateVector,
    a: &Projector,
    eps_cond: f64,
) -> Result<StateVector> {
    let reduced = a.apply(psi)?;
    let p_a = reduced.norm_squared();
    if p_a <= eps_cond {
        return Err(QuantumError::ZeroProbabilityCondition {
            label: a.label().to_string(),
            probability: p_a,
        });
    }
    StateVector::normalize(reduced.as_slice().to_vec())
}

/// Standard deviation of a projector in a pure state, `sqrt(p(1 - p))`.
pub fn deviation(state: &StateVector, a: &Projector) -> Result<f64> {
    let p = snap_endpoints(born_probability(state, a)?);
    Ok((p * (1.0 - p)).sqrt())
}

/// Disturbance of `second` caused by first measuring the rank-one `first`.
///
/// Relies on `P B P = Tr(P B) P` for rank-one `P`.
pub fn disturbance_metrics(first: &Projector, second: &Projector) -> Result<DisturbanceMetrics> {
    check_dims(first.dim(), second.dim())?;
    let trace = first.trace();
    if (trace - 1.0).abs() > TOL_PROJECTOR {
        return Err(QuantumError::NotRankOne {
            label: first.label().to_string(),
            trace,
        });
    }
    let c = snap_endpoints(check_probability(first.product(second)?.trace().re)?);
    Ok(DisturbanceMetrics::from_overlap(c))
}

/// Largest entry magnitude of `AB - BA`.
pub fn commutator_norm(a: &Projector, b: &Projector) -> Result<f64> {
    let ab = a.product(b)?;
    let ba = b.product(a)?;
    Ok(max_entry(&(ab - ba)))
}

/// Every projector in `set` is pairwise orthogonal and they sum to identity.
pub fn is_resolution_of_identity(set: &[Projector], tol: f64) -> bool {
    let Some(first) = set.first() else {
        return false;
    };
    let dim = first.dim();
    if set.iter().any(|p| p.dim() != dim) {
        return false;
    }
    let sum = set
        .iter()
        .fold(DMatrix::<C64>::zeros(dim, dim), |acc, p| acc + p.matrix());
    max_entry(&(sum - DMatrix::identity(dim, dim))) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn qubit_plus() -> StateVector {
        StateVector::from_real(&[1.0, 1.0]).unwrap()
    }

    fn p0() -> Projector {
        Projector::onto("P0", &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap()
    }

    fn p_plus() -> Projector {
        Projector::onto("P+", &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn identity_has_unit_probability() {
        let psi = StateVector::normalize(vec![c(0.3, -0.2), c(0.1, 0.9)]).unwrap();
        assert!((born_probability(&psi, &Projector::identity(2)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_projector() {
        let m =
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            Projector::new("bad", m),
            Err(QuantumError::NotProjector { .. })
        ));
    }

    #[test]
    fn rejects_unnormalized_new() {
        assert!(matches!(
            StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(QuantumError::NotNormalized { .. })
        ));
        assert_eq!(
            StateVector::normalize(vec![c(0.0, 0.0)]),
            Err(QuantumError::ZeroNorm)
        );
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let psi = qubit_plus();
        let err = born_probability(&psi, &Projector::identity(3)).unwrap_err();
        assert_eq!(
            err,
            QuantumError::DimensionMismatch {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn conditioning_on_itself_is_certain() {
        let psi = qubit_plus();
        assert!((conditional_probability(&psi, &p_plus(), &p_plus()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_probability_condition_names_projector() {
        let psi = StateVector::basis(2, 1);
        match conditional_probability(&psi, &p0(), &p_plus()) {
            Err(QuantumError::ZeroProbabilityCondition { label, .. }) => assert_eq!(label, "P0"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(post_measurement_state(&psi, &p0()).is_err());
    }

    #[test]
    fn eigenstate_is_unchanged_by_projection() {
        let psi = StateVector::normalize(vec![c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let after = post_measurement_state(&psi, &p0()).unwrap();
        assert!(after.same_ray(&psi, 1e-12));
        assert!(deviation(&psi, &p0()).unwrap() < 1e-15);
    }

    #[test]
    fn disturbance_of_self_is_zero() {
        let m = disturbance_metrics(&p_plus(), &p_plus()).unwrap();
        assert_eq!(m.c, 1.0);
        assert_eq!(m.sigma_f, 0.0);
        assert_eq!(m.entropic_bound, 0.0);
    }

    #[test]
    fn disturbance_requires_rank_one() {
        let err = disturbance_metrics(&Projector::identity(2), &p0()).unwrap_err();
        assert!(matches!(err, QuantumError::NotRankOne { .. }));
    }

    #[test]
    fn orthogonal_disturbance_is_infinite_entropy() {
        let m = disturbance_metrics(&p0(), &p0().complement()).unwrap();
        assert_eq!(m.c, 0.0);
        assert!(m.entropic_bound.is_infinite());
    }

    #[test]
    fn mutually_unbiased_disturbance() {
        let m = disturbance_metrics(&p0(), &p_plus()).unwrap();
        assert!((m.c - 0.5).abs() < 1e-15);
        assert!((m.sigma_f - 0.5).abs() < 1e-15);
        assert!((m.entropic_bound - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn tensor_of_identities() {
        let id = Projector::identity(2).tensor(&Projector::identity(3));
        assert_eq!(id.matrix(), &DMatrix::<C64>::identity(6, 6));
        let psi = qubit_plus().tensor(&StateVector::basis(2, 0));
        assert_eq!(psi.dim(), 4);
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn local_operators_commute() {
        let a = p0().tensor(&Projector::identity(2));
        let b = Projector::identity(2).tensor(&p_plus());
        assert!(commutator_norm(&a, &b).unwrap() <= 1e-15);
        assert!(commutator_norm(&p0(), &p_plus()).unwrap() > 0.1);
    }

    #[test]
    fn direct_sum_embeds_block() {
        let e = Projector::zero(1).direct_sum(&p_plus());
        assert_eq!(e.dim(), 3);
        let gamma = StateVector::basis(3, 0);
        assert_eq!(born_probability(&gamma, &e).unwrap(), 0.0);
    }

    #[test]
    fn computational_basis_resolves_identity() {
        assert!(is_resolution_of_identity(&[p0(), p0().complement()], 1e-15));
        assert!(!is_resolution_of_identity(&[p0(), p_plus()], 1e-3));
    }
}
