//! Hardy's two-qubit model.
//!
//! `|ψ⟩ = α|++⟩ − β|−−⟩` with real `α, β ≥ 0`, `α² + β² = 1`, and on each
//! qubit the rank-one projectors `U = |u⟩⟨u|`, `D = |d⟩⟨d|` with
//!
//! ```text
//! |u⟩ ∝ √β |+⟩ + √α |−⟩
//! |d⟩ ∝ β^{3/2} |+⟩ − α^{3/2} |−⟩
//! ```
//!
//! Every quantity is computed by matrix evaluation and paired with its
//! closed form so callers can audit the two against each other.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::qcore::{
    born_probability, commutator_norm, conditional_probability, disturbance_metrics, Projector,
    QuantumError, StateVector, Tensor, C64,
};

/// `|α − β|` below which the model is treated as maximally entangled.
pub const COMMUTING_TOL: f64 = 1e-9;
/// Cells in the coarse scan preceding golden-section refinement.
pub const OPTIMIZER_GRID: usize = 1000;
/// Bracket width at which golden-section refinement stops.
pub const OPTIMIZER_XTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HardyError {
    #[error("alpha must lie strictly inside (0, 1), got {0}")]
    AlphaOutOfRange(f64),
    #[error("invalid sweep: need 0 < alpha_min < alpha_max < 1 and steps >= 2 (got {min}, {max}, {steps})")]
    InvalidSweep { min: f64, max: f64, steps: usize },
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

pub type Result<T> = std::result::Result<T, HardyError>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardyParams {
    alpha: f64,
    beta: f64,
}

impl HardyParams {
    /// `β = sqrt(1 − α²)`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(HardyError::AlphaOutOfRange(alpha));
        }
        Ok(Self {
            alpha,
            beta: (1.0 - alpha * alpha).sqrt(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `t = αβ ∈ (0, ½]`.
    pub fn product(&self) -> f64 {
        self.alpha * self.beta
    }

    pub fn is_maximally_entangled(&self) -> bool {
        (self.alpha - self.beta).abs() <= COMMUTING_TOL
    }
}

#[derive(Debug, Clone)]
pub struct HardyModel {
    pub params: HardyParams,
    pub psi: StateVector,
    pub u1: Projector,
    pub u2: Projector,
    pub d1: Projector,
    pub d2: Projector,
    /// Single-qubit `|u⟩⟨u|` (identical on both sides).
    pub u_local: Projector,
    /// Single-qubit `|d⟩⟨d|`.
    pub d_local: Projector,
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn build_model(alpha: f64) -> Result<HardyModel> {
    let params = HardyParams::new(alpha)?;
    let (a, b) = (params.alpha, params.beta);

    let u_norm = (a + b).sqrt();
    let u_ket = [real(b.sqrt() / u_norm), real(a.sqrt() / u_norm)];
    let d_norm = (a.powi(3) + b.powi(3)).sqrt();
    let d_ket = [real(b.powf(1.5) / d_norm), real(-a.powf(1.5) / d_norm)];
    let u_local = Projector::onto("U", &u_ket)?;
    let d_local = Projector::onto("D", &d_ket)?;

    let id = Projector::identity(2);
    let u1 = u_local.tensor(&id).with_label("U1");
    let u2 = id.tensor(&u_local).with_label("U2");
    let d1 = d_local.tensor(&id).with_label("D1");
    let d2 = id.tensor(&d_local).with_label("D2");

    // basis order |++⟩, |+−⟩, |−+⟩, |−−⟩
    let psi = StateVector::normalize(vec![real(a), real(0.0), real(0.0), real(-b)])?;
    Ok(HardyModel {
        params,
        psi,
        u1,
        u2,
        d1,
        d2,
        u_local,
        d_local,
    })
}

/// Probabilities of the model; field names follow the conditioning order
/// `p_cond_X_given_Y = P(X | Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardyMetrics {
    pub p_d1: f64,
    pub p_cond_u2_given_d1: f64,
    pub p_cond_u1_given_d2: f64,
    pub p_cond_d2_given_d1: f64,
    pub p_joint_u1u2: f64,
    pub p_joint_d1d2: f64,
    pub c_bar: f64,
    pub commutator_d1u1: f64,
}

impl HardyMetrics {
    /// Analytic values for the same parameters.
    pub fn closed_form(params: &HardyParams) -> Self {
        let (a, b) = (params.alpha, params.beta);
        let t = params.product();
        let gap = (b - a) * (b - a);
        let p_d2_given_d1 = gap / (gap + b * a);
        // ⟨d|u⟩² = (β−α)²/(1−αβ); |[D,U]| = |⟨d|u⟩| sqrt(1 − ⟨d|u⟩²)
        let overlap = p_d2_given_d1;
        Self {
            p_d1: t * t / (1.0 - t),
            p_cond_u2_given_d1: 1.0,
            p_cond_u1_given_d2: 1.0,
            p_cond_d2_given_d1: p_d2_given_d1,
            p_joint_u1u2: 0.0,
            p_joint_d1d2: t * t * (1.0 - 2.0 * t) / ((1.0 - t) * (1.0 - t)),
            c_bar: 1.0 - p_d2_given_d1,
            commutator_d1u1: (overlap * (1.0 - overlap)).sqrt(),
        }
    }

    pub fn as_array(&self) -> [f64; 8] {
        [
            self.p_d1,
            self.p_cond_d2_given_d1,
            self.p_cond_u2_given_d1,
            self.p_cond_u1_given_d2,
            self.p_joint_u1u2,
            self.p_joint_d1d2,
            self.c_bar,
            self.commutator_d1u1,
        ]
    }

    /// Largest absolute field difference.
    pub fn max_difference(&self, other: &HardyMetrics) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

pub fn compute_metrics(model: &HardyModel) -> Result<HardyMetrics> {
    let psi = &model.psi;
    let p_d1 = born_probability(psi, &model.d1)?;
    let p_cond_d2_given_d1 = conditional_probability(psi, &model.d1, &model.d2)?;
    let d1d2 = model.d_local.tensor(&model.d_local);
    let u1u2 = model.u_local.tensor(&model.u_local);
    Ok(HardyMetrics {
        p_d1,
        p_cond_u2_given_d1: conditional_probability(psi, &model.d1, &model.u2)?,
        p_cond_u1_given_d2: conditional_probability(psi, &model.d2, &model.u1)?,
        p_cond_d2_given_d1,
        p_joint_u1u2: born_probability(psi, &u1u2)?,
        p_joint_d1d2: born_probability(psi, &d1d2)?,
        c_bar: conditional_probability(psi, &model.d1, &model.u1.complement())?,
        commutator_d1u1: commutator_norm(&model.d1, &model.u1)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Contradiction {
    /// Local realism forces `P(Ū₁|D₁) = 1`; quantum mechanics gives `c̄ < 1`.
    Exhibited {
        hv_value: f64,
        quantum_value: f64,
        discrepancy: f64,
        /// `Tr(D Ū)` on a single qubit.
        trace_value: f64,
    },
    /// `α = β`: `D₁` and `U₁` commute and no contradiction arises.
    NoContradiction { commutator_norm: f64 },
}

pub fn disturbance_contradiction(model: &HardyModel) -> Result<Contradiction> {
    if model.params.is_maximally_entangled() {
        return Ok(Contradiction::NoContradiction {
            commutator_norm: commutator_norm(&model.d1, &model.u1)?,
        });
    }
    let quantum_value = conditional_probability(&model.psi, &model.d1, &model.u1.complement())?;
    let trace_value = disturbance_metrics(&model.d_local, &model.u_local.complement())?.c;
    Ok(Contradiction::Exhibited {
        hv_value: 1.0,
        quantum_value,
        discrepancy: 1.0 - quantum_value,
        trace_value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub metrics: HardyMetrics,
    pub closed_form: HardyMetrics,
}

impl SweepRow {
    pub fn max_deviation(&self) -> f64 {
        self.metrics.max_difference(&self.closed_form)
    }
}

/// Inclusive uniform grid over `[alpha_min, alpha_max]`.
pub fn sweep(alpha_min: f64, alpha_max: f64, steps: usize) -> Result<Vec<SweepRow>> {
    let valid = alpha_min > 0.0 && alpha_max < 1.0 && alpha_min < alpha_max && steps >= 2;
    if !valid {
        return Err(HardyError::InvalidSweep {
            min: alpha_min,
            max: alpha_max,
            steps,
        });
    }
    let width = alpha_max - alpha_min;
    (0..steps)
        .into_par_iter()
        .map(|k| {
            let alpha = if k == steps - 1 {
                alpha_max
            } else {
                alpha_min + width * k as f64 / (steps - 1) as f64
            };
            let model = build_model(alpha)?;
            Ok(SweepRow {
                alpha,
                beta: model.params.beta,
                metrics: compute_metrics(&model)?,
                closed_form: HardyMetrics::closed_form(&model.params),
            })
        })
        .collect()
}

/// `⟨ψ|D₁D₂|ψ⟩` by matrix evaluation.
pub fn paradox_probability(alpha: f64) -> Result<f64> {
    let model = build_model(alpha)?;
    let d1d2 = model.d_local.tensor(&model.d_local);
    Ok(born_probability(&model.psi, &d1d2)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParadoxOptimum {
    /// The smaller of the two mirror maximizers (`α ↔ β`).
    pub alpha_star: f64,
    pub beta_star: f64,
    pub p_max: f64,
}

/// Maximize `⟨D₁D₂⟩` over `α`: grid scan, then golden-section refinement.
pub fn optimize_paradox() -> Result<ParadoxOptimum> {
    let h = 1.0 / (OPTIMIZER_GRID + 1) as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for k in 1..=OPTIMIZER_GRID {
        let p = paradox_probability(k as f64 * h)?;
        if p > best.1 {
            best = (k, p);
        }
    }
    let lo = (best.0 - 1) as f64 * h;
    let hi = (best.0 + 1) as f64 * h;
    let lo = lo.max(h * 1e-3);
    let hi = hi.min(1.0 - h * 1e-3);
    let alpha = golden_section_max(paradox_probability, lo, hi, OPTIMIZER_XTOL)?;
    let p_max = paradox_probability(alpha)?;
    let beta = (1.0 - alpha * alpha).sqrt();
    let (alpha_star, beta_star) = if alpha <= beta {
        (alpha, beta)
    } else {
        (beta, alpha)
    };
    Ok(ParadoxOptimum {
        alpha_star,
        beta_star,
        p_max,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{post_measurement_state, QuantumError};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn rejects_degenerate_alpha() {
        for alpha in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(matches!(
                build_model(alpha),
                Err(HardyError::AlphaOutOfRange(_))
            ));
        }
    }

    #[test]
    fn kets_are_orthogonal_at_maximal_entanglement() {
        let m = build_model(FRAC_1_SQRT_2).unwrap();
        let overlap = m.d_local.product(&m.u_local).unwrap().trace().norm();
        assert!(overlap < 1e-15);
    }

    #[test]
    fn alpha_point_six_values() {
        let m = compute_metrics(&build_model(0.6).unwrap()).unwrap();
        assert!((m.p_d1 - 0.2304 / 0.52).abs() < 1e-12);
        assert!((m.p_cond_d2_given_d1 - 0.04 / 0.52).abs() < 1e-12);
        assert!((m.c_bar - 0.48 / 0.52).abs() < 1e-12);
        assert!(m.p_joint_u1u2 < 1e-15);
        assert!(m.commutator_d1u1 > 0.01);
    }

    #[test]
    fn d1_reduction_forces_u2() {
        let m = build_model(0.6).unwrap();
        let after = post_measurement_state(&m.psi, &m.d1).unwrap();
        assert!((born_probability(&after, &m.u2).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn contradiction_status() {
        match disturbance_contradiction(&build_model(0.6).unwrap()).unwrap() {
            Contradiction::Exhibited {
                hv_value,
                quantum_value,
                discrepancy,
                trace_value,
            } => {
                assert_eq!(hv_value, 1.0);
                assert!((quantum_value - 12.0 / 13.0).abs() < 1e-12);
                assert!((trace_value - 12.0 / 13.0).abs() < 1e-12);
                assert!((discrepancy - 1.0 / 13.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            disturbance_contradiction(&build_model(FRAC_1_SQRT_2).unwrap()).unwrap(),
            Contradiction::NoContradiction { .. }
        ));
    }

    #[test]
    fn sweep_grid_is_inclusive() {
        let rows = sweep(0.2, 0.8, 2).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].alpha, 0.2);
        assert_eq!(rows[1].alpha, 0.8);
        let rows = sweep(0.1, 0.9, 9).unwrap();
        assert!(rows.windows(2).all(|w| w[0].alpha < w[1].alpha));
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        for (a, b, n) in [(0.0, 0.5, 3), (0.5, 0.4, 3), (0.2, 1.0, 3), (0.2, 0.4, 1)] {
            assert!(matches!(
                sweep(a, b, n),
                Err(HardyError::InvalidSweep { .. })
            ));
        }
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let x = golden_section_max(|x| Ok(-(x - 0.3) * (x - 0.3)), 0.0, 1.0, 1e-10).unwrap();
        assert!((x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn quantum_errors_convert() {
        let e: HardyError = QuantumError::ZeroNorm.into();
        assert!(matches!(e, HardyError::Quantum(_)));
    }
}
