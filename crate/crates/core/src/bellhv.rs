//! Bell's non-contextual hidden-variables model for a single qubit.
//!
//! A pure state with Bloch vector `s` and the projector
//! `P_m = ½(1 + m·σ)` receive the value
//!
//! ```text
//! A_ψ(λ) = ½[1 + sign(λ + ½|s·m|) sign(s·m)],   λ ∈ [−½, ½), dμ = dλ
//! ```
//!
//! so the set `{λ : A_ψ(λ) = 1}` is a single threshold interval of measure
//! `(1 + s·m)/2`. The model reproduces every Born probability but, lacking
//! state reduction, its Bayes-rule conditional `μ[b ∩ a]/μ[a]` disagrees with
//! the quantum sequential probability `⟨ψ|ABA|ψ⟩/⟨ψ|A|ψ⟩`.
//!
//! `sign(0)` is taken as `+1`; boundaries are half-open. Both choices only
//! touch null sets.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lambda::{LambdaSet, LAMBDA_MIN};
use crate::qcore::{
    born_probability, conditional_probability_with, Projector, QuantumError, StateVector, C64,
    EPS_COND,
};

/// Allowed deviation of a Bloch vector from unit length.
pub const UNIT_TOL: f64 = 1e-12;
/// Raw vectors shorter than this cannot be normalized.
pub const MIN_RAW_NORM: f64 = 1e-6;
/// Discrepancy above which a state counts as violating Bayes' rule.
pub const MALLEY_THRESHOLD: f64 = 1e-6;
pub const HISTOGRAM_BINS: usize = 20;
/// Monte Carlo estimates must fall within this many standard errors.
pub const MC_SIGMAS: f64 = 5.0;
pub const MC_MIN_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BellError {
    #[error("vector ({x}, {y}, {z}) is not a unit vector")]
    NotUnit { x: f64, y: f64, z: f64 },
    #[error("vector norm {0:e} is too small to normalize")]
    Degenerate(f64),
    #[error("conditioning event has measure {measure:e}")]
    ZeroMeasureCondition { measure: f64 },
    #[error("at least {min} Monte Carlo samples required, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("no Monte Carlo sample landed in the conditioning set")]
    NoAcceptedSamples,
    #[error("at least one trial required")]
    NoTrials,
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

pub type Result<T> = std::result::Result<T, BellError>;

/// Unit 3-vector: a qubit pure state or a spin measurement axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl Serialize for BlochVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y, self.z].serialize(serializer)
    }
}

impl BlochVector {
    pub const X: BlochVector = BlochVector {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: BlochVector = BlochVector {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const Z: BlochVector = BlochVector {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// Accepts only vectors already of unit length within [`UNIT_TOL`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(BellError::NotUnit { x, y, z });
        }
        Ok(Self { x, y, z })
    }

    /// Rescales to unit length; rejects norms below [`MIN_RAW_NORM`].
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm < MIN_RAW_NORM {
            return Err(BellError::Degenerate(norm));
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Uniform direction from two uniform variates in `[0, 1)`.
    pub fn from_uniforms(u1: f64, u2: f64) -> Self {
        let z = 2.0 * u1 - 1.0;
        let r = (1.0 - z * z).max(0.0).sqrt();
        let phi = 2.0 * PI * u2;
        Self {
            x: r * phi.cos(),
            y: r * phi.sin(),
            z,
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen();
        Self::from_uniforms(u1, u2)
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn neg(&self) -> BlochVector {
        BlochVector {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// The qubit ket with this Bloch vector.
    pub fn state(&self) -> StateVector {
        let amplitudes = if self.z > -1.0 {
            let a = ((1.0 + self.z) / 2.0).sqrt();
            let denom = (2.0 * (1.0 + self.z)).sqrt();
            vec![C64::new(a, 0.0), C64::new(self.x / denom, self.y / denom)]
        } else {
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
        };
        StateVector::normalize(amplitudes).expect("Bloch ket has non-zero norm")
    }

    /// `½(1 + m·σ)`.
    pub fn projector(&self) -> Projector {
        let h = 0.5;
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(h * (1.0 + self.z), 0.0),
                C64::new(h * self.x, -h * self.y),
                C64::new(h * self.x, h * self.y),
                C64::new(h * (1.0 - self.z), 0.0),
            ],
        );
        Projector::new(format!("P[{:.6},{:.6},{:.6}]", self.x, self.y, self.z), m)
            .expect("unit Bloch vector gives a projector")
    }
}

/// `{λ : A_ψ(λ) = 1}` for state `s` and projector `P_m`.
pub fn hv_response(s: &BlochVector, m: &BlochVector) -> LambdaSet {
    let sm = s.dot(m);
    let threshold = -0.5 * sm.abs();
    if sm >= 0.0 {
        LambdaSet::interval(threshold, 0.5)
    } else {
        LambdaSet::interval(LAMBDA_MIN, threshold)
    }
}

/// `∫ A_ψ(λ) dλ`.
pub fn hv_expectation(s: &BlochVector, m: &BlochVector) -> f64 {
    hv_response(s, m).measure()
}

/// Born value `⟨ψ_s|P_m|ψ_s⟩` through the matrix route.
pub fn born_qubit(s: &BlochVector, m: &BlochVector) -> Result<f64> {
    Ok(born_probability(&s.state(), &m.projector())?)
}

/// Bayes rule `μ[b ∩ a]/μ[a]` with both sets fixed by the initial state.
pub fn classical_conditional(s: &BlochVector, m: &BlochVector, n: &BlochVector) -> Result<f64> {
    classical_conditional_with(s, m, n, EPS_COND)
}

pub fn classical_conditional_with(
    s: &BlochVector,
    m: &BlochVector,
    n: &BlochVector,
    eps_cond: f64,
) -> Result<f64> {
    let a = hv_response(s, m);
    let measure = a.measure();
    if measure <= eps_cond {
        return Err(BellError::ZeroMeasureCondition { measure });
    }
    let b = hv_response(s, n);
    Ok((a.intersection(&b).measure() / measure).clamp(0.0, 1.0))
}

/// `⟨ψ|P_m P_n P_m|ψ⟩ / ⟨ψ|P_m|ψ⟩`.
pub fn quantum_conditional_qubit(s: &BlochVector, m: &BlochVector, n: &BlochVector) -> Result<f64> {
    quantum_conditional_qubit_with(s, m, n, EPS_COND)
}

pub fn quantum_conditional_qubit_with(
    s: &BlochVector,
    m: &BlochVector,
    n: &BlochVector,
    eps_cond: f64,
) -> Result<f64> {
    Ok(conditional_probability_with(
        &s.state(),
        &m.projector(),
        &n.projector(),
        eps_cond,
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionalComparison {
    pub s: BlochVector,
    pub m: BlochVector,
    pub n: BlochVector,
    pub quantum: f64,
    pub classical: f64,
    pub discrepancy: f64,
}

pub fn compare(s: &BlochVector, m: &BlochVector, n: &BlochVector) -> Result<ConditionalComparison> {
    compare_with(s, m, n, EPS_COND)
}

pub fn compare_with(
    s: &BlochVector,
    m: &BlochVector,
    n: &BlochVector,
    eps_cond: f64,
) -> Result<ConditionalComparison> {
    let quantum = quantum_conditional_qubit_with(s, m, n, eps_cond)?;
    let classical = classical_conditional_with(s, m, n, eps_cond)?;
    Ok(ConditionalComparison {
        s: *s,
        m: *m,
        n: *n,
        quantum,
        classical,
        discrepancy: (quantum - classical).abs(),
    })
}

/// Independent generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub trials: usize,
    /// Trials dropped because the conditioning event had zero probability.
    pub skipped: usize,
    pub max: ConditionalComparison,
    /// Counts over `[0, 1]` in [`HISTOGRAM_BINS`] equal bins; the last bin is closed.
    pub histogram: Vec<u64>,
}

fn histogram_bin(discrepancy: f64) -> usize {
    ((discrepancy * HISTOGRAM_BINS as f64) as usize).min(HISTOGRAM_BINS - 1)
}

/// Random `(s, m, n)` triples; trial `i` draws from `trial_rng(seed, i)`.
pub fn scan_discrepancy(trials: usize, seed: u64) -> Result<ScanResult> {
    if trials == 0 {
        return Err(BellError::NoTrials);
    }
    let outcomes: Vec<Option<ConditionalComparison>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            let s = BlochVector::random(&mut rng);
            let m = BlochVector::random(&mut rng);
            let n = BlochVector::random(&mut rng);
            match compare(&s, &m, &n) {
                Ok(c) => Ok(Some(c)),
                Err(BellError::ZeroMeasureCondition { .. })
                | Err(BellError::Quantum(QuantumError::ZeroProbabilityCondition { .. })) => {
                    Ok(None)
                }
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;

    let mut histogram = vec![0u64; HISTOGRAM_BINS];
    let mut max: Option<ConditionalComparison> = None;
    let mut skipped = 0;
    for outcome in outcomes {
        let Some(c) = outcome else {
            skipped += 1;
            continue;
        };
        histogram[histogram_bin(c.discrepancy)] += 1;
        if max.is_none_or(|best| c.discrepancy > best.discrepancy) {
            max = Some(c);
        }
    }
    let max = max.ok_or(BellError::ZeroMeasureCondition { measure: 0.0 })?;
    Ok(ScanResult {
        trials,
        skipped,
        max,
        histogram,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MalleyResult {
    pub violating_s: Option<BlochVector>,
    pub discrepancy: f64,
    pub trials_used: usize,
}

/// Looks for a state on which Bayes' rule fails for the pair `(P_m, P_n)`.
/// Succeeds whenever the projectors do not commute (`m ≠ ±n`).
pub fn malley_search(m: &BlochVector, n: &BlochVector, trials: usize, seed: u64) -> MalleyResult {
    let mut largest: f64 = 0.0;
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let s = BlochVector::random(&mut rng);
        let Ok(c) = compare(&s, m, n) else {
            continue;
        };
        if c.discrepancy > MALLEY_THRESHOLD {
            return MalleyResult {
                violating_s: Some(s),
                discrepancy: c.discrepancy,
                trials_used: i + 1,
            };
        }
        largest = largest.max(c.discrepancy);
    }
    MalleyResult {
        violating_s: None,
        discrepancy: largest,
        trials_used: trials,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloCheck {
    pub samples: usize,
    /// Samples that landed in the conditioning set `a`.
    pub accepted: usize,
    pub classical_estimate: f64,
    pub exact: f64,
    pub standard_error: f64,
    pub z_score: f64,
    pub pass: bool,
}

/// Estimates `μ[b ∩ a]/μ[a]` by sampling `λ` uniformly and counting.
///
/// The standard error uses the exact ratio and is floored at `1/accepted`
/// so the z-score stays finite when the ratio is 0 or 1.
pub fn monte_carlo_check(
    s: &BlochVector,
    m: &BlochVector,
    n: &BlochVector,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloCheck> {
    if samples < MC_MIN_SAMPLES {
        return Err(BellError::TooFewSamples {
            min: MC_MIN_SAMPLES,
            got: samples,
        });
    }
    let a = hv_response(s, m);
    let b = hv_response(s, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut accepted, mut hits) = (0usize, 0usize);
    for _ in 0..samples {
        let lambda: f64 = rng.gen::<f64>() + LAMBDA_MIN;
        if a.contains(lambda) {
            accepted += 1;
            if b.contains(lambda) {
                hits += 1;
            }
        }
    }
    if accepted == 0 {
        return Err(BellError::NoAcceptedSamples);
    }
    let exact = classical_conditional(s, m, n)?;
    let estimate = hits as f64 / accepted as f64;
    let k = accepted as f64;
    let standard_error = ((exact * (1.0 - exact)) / k).sqrt().max(1.0 / k);
    let z_score = (estimate - exact) / standard_error;
    Ok(MonteCarloCheck {
        samples,
        accepted,
        classical_estimate: estimate,
        exact,
        standard_error,
        z_score,
        pass: z_score.abs() <= MC_SIGMAS,
    })
}
