//! Hardy's electron-positron interferometer.
//!
//! Five-dimensional space with ordered basis
//! `[γ, u⁺u⁻, u⁺v⁻, v⁺u⁻, v⁺v⁻]`: the annihilation photon followed by the
//! positron ⊗ electron path states. Single-party detectors act on the
//! four-dimensional particle sector and annihilate `|γ⟩`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::qcore::{
    born_probability, conditional_probability, disturbance_metrics, Projector, Result, StateVector,
    Tensor, C64,
};

pub const DIM: usize = 5;

/// Index of each basis ket.
pub mod basis {
    pub const GAMMA: usize = 0;
    pub const UP_UM: usize = 1;
    pub const UP_VM: usize = 2;
    pub const VP_UM: usize = 3;
    pub const VP_VM: usize = 4;
    pub const LABELS: [&str; 5] = ["γ", "u⁺u⁻", "u⁺v⁻", "v⁺u⁻", "v⁺v⁻"];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    Positron,
    Electron,
}

/// The eight detector events. `Inf` detectors sit on the arms before the
/// second beam splitter, `Zero` detectors after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Detector {
    CPlusInf,
    DPlusInf,
    CMinusInf,
    DMinusInf,
    CPlus0,
    DPlus0,
    CMinus0,
    DMinus0,
}

impl Detector {
    pub const ALL: [Detector; 8] = [
        Detector::CPlusInf,
        Detector::DPlusInf,
        Detector::CMinusInf,
        Detector::DMinusInf,
        Detector::CPlus0,
        Detector::DPlus0,
        Detector::CMinus0,
        Detector::DMinus0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Detector::CPlusInf => "C+inf",
            Detector::DPlusInf => "D+inf",
            Detector::CMinusInf => "C-inf",
            Detector::DMinusInf => "D-inf",
            Detector::CPlus0 => "C+0",
            Detector::DPlus0 => "D+0",
            Detector::CMinus0 => "C-0",
            Detector::DMinus0 => "D-0",
        }
    }

    pub fn party(self) -> Party {
        match self {
            Detector::CPlusInf | Detector::DPlusInf | Detector::CPlus0 | Detector::DPlus0 => {
                Party::Positron
            }
            _ => Party::Electron,
        }
    }

    /// Qubit ket in the local `(u, v)` basis that this detector projects on.
    fn local_ket(self) -> [C64; 2] {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let h = FRAC_1_SQRT_2;
        match self {
            Detector::CPlusInf | Detector::CMinusInf => [one, zero],
            Detector::DPlusInf | Detector::DMinusInf => [zero, one],
            // (u - i v)/√2
            Detector::CPlus0 | Detector::CMinus0 => [C64::new(h, 0.0), C64::new(0.0, -h)],
            // (v - i u)/√2
            Detector::DPlus0 | Detector::DMinus0 => [C64::new(0.0, -h), C64::new(h, 0.0)],
        }
    }

    /// The rank-one projector on this detector's own qubit.
    pub fn local_projector(self) -> Projector {
        Projector::onto(self.name(), &self.local_ket()).expect("detector kets are normalized")
    }
}

/// Lift a single-party qubit operator to the 5-dim space, zero on `|γ⟩`.
pub fn embed(party: Party, local: &Projector) -> Projector {
    let id = Projector::identity(2);
    let particle = match party {
        Party::Positron => local.tensor(&id),
        Party::Electron => id.tensor(local),
    };
    Projector::zero(1)
        .direct_sum(&particle)
        .with_label(local.label().to_string())
}

/// All eight embedded detector projectors.
#[derive(Debug, Clone)]
pub struct DetectorSet {
    pub c_plus_inf: Projector,
    pub d_plus_inf: Projector,
    pub c_minus_inf: Projector,
    pub d_minus_inf: Projector,
    pub c_plus_0: Projector,
    pub d_plus_0: Projector,
    pub c_minus_0: Projector,
    pub d_minus_0: Projector,
}

impl DetectorSet {
    pub fn get(&self, detector: Detector) -> &Projector {
        match detector {
            Detector::CPlusInf => &self.c_plus_inf,
            Detector::DPlusInf => &self.d_plus_inf,
            Detector::CMinusInf => &self.c_minus_inf,
            Detector::DMinusInf => &self.d_minus_inf,
            Detector::CPlus0 => &self.c_plus_0,
            Detector::DPlus0 => &self.d_plus_0,
            Detector::CMinus0 => &self.c_minus_0,
            Detector::DMinus0 => &self.d_minus_0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Detector, &Projector)> {
        Detector::ALL.into_iter().map(move |d| (d, self.get(d)))
    }
}

/// `½(−|γ⟩ + i|u⁺v⁻⟩ + i|v⁺u⁻⟩ + |v⁺v⁻⟩)`.
pub fn build_state() -> StateVector {
    let amplitudes = vec![
        C64::new(-0.5, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.5),
        C64::new(0.0, 0.5),
        C64::new(0.5, 0.0),
    ];
    StateVector::new(amplitudes).expect("gedanken state is normalized")
}

pub fn build_detectors() -> DetectorSet {
    let make = |d: Detector| embed(d.party(), &d.local_projector());
    DetectorSet {
        c_plus_inf: make(Detector::CPlusInf),
        d_plus_inf: make(Detector::DPlusInf),
        c_minus_inf: make(Detector::CMinusInf),
        d_minus_inf: make(Detector::DMinusInf),
        c_plus_0: make(Detector::CPlus0),
        d_plus_0: make(Detector::DPlus0),
        c_minus_0: make(Detector::CMinus0),
        d_minus_0: make(Detector::DMinus0),
    }
}

/// Joint firing of two detectors on different parties.
pub fn joint_projector(a: Detector, b: Detector) -> Projector {
    assert_ne!(
        a.party(),
        b.party(),
        "joint projector needs one detector per party"
    );
    let (p, e) = if a.party() == Party::Positron {
        (a, b)
    } else {
        (b, a)
    };
    let particle = p.local_projector().tensor(&e.local_projector());
    Projector::zero(1)
        .direct_sum(&particle)
        .with_label(format!("{}∧{}", a.name(), b.name()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelationEntry {
    pub quantum_value: f64,
    /// Local-realistic prediction; `None` where the hidden-variables side
    /// only asserts positivity.
    pub hv_prediction: Option<f64>,
    pub discrepancy: Option<f64>,
    /// Closed-form value of `quantum_value`, for self-audit.
    pub closed_form: f64,
}

impl RelationEntry {
    fn new(quantum_value: f64, hv_prediction: Option<f64>, closed_form: f64) -> Self {
        Self {
            quantum_value,
            hv_prediction,
            discrepancy: hv_prediction.map(|hv| (quantum_value - hv).abs()),
            closed_form,
        }
    }

    pub fn closed_form_error(&self) -> f64 {
        (self.quantum_value - self.closed_form).abs()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GedankenReport {
    pub relations: BTreeMap<String, RelationEntry>,
}

impl GedankenReport {
    fn insert(&mut self, id: &str, entry: RelationEntry) {
        self.relations.insert(id.to_string(), entry);
    }

    pub fn get(&self, id: &str) -> Option<&RelationEntry> {
        self.relations.get(id)
    }

    pub fn extend(&mut self, other: GedankenReport) {
        self.relations.extend(other.relations);
    }

    pub fn max_closed_form_error(&self) -> f64 {
        self.relations
            .values()
            .map(RelationEntry::closed_form_error)
            .fold(0.0, f64::max)
    }
}

pub mod ids {
    pub const JOINT_CP_INF_CM_INF: &str = "joint_C+inf_C-inf";
    pub const COND_DM_INF_GIVEN_CP_INF: &str = "cond_D-inf_given_C+inf";
    pub const COND_DP_INF_GIVEN_CM_INF: &str = "cond_D+inf_given_C-inf";
    pub const JOINT_DP_INF_DM_INF: &str = "joint_D+inf_D-inf";
    pub const COND_CP_INF_GIVEN_DM_0: &str = "cond_C+inf_given_D-0";
    pub const COND_CM_INF_GIVEN_DP_0: &str = "cond_C-inf_given_D+0";
    pub const PROB_DM_0: &str = "prob_D-0";
    pub const PROB_DP_0: &str = "prob_D+0";
    pub const JOINT_DP_0_DM_0: &str = "joint_D+0_D-0";
    pub const DIRECT_DISTURBANCE: &str = "cond_D-inf_given_D-0";
    pub const COMPLEMENT_FULL: &str = "cond_notD-0_given_notD-inf";
    pub const COMPLEMENT_ELECTRON_TRACE: &str = "trace_notD-0_notD-inf_electron";
}

/// Relations on the `∞` detectors that, on their own, admit a local model.
pub fn verify_base_relations() -> Result<GedankenReport> {
    let psi = build_state();
    let det = build_detectors();
    let mut report = GedankenReport::default();
    let joint_cc = born_probability(
        &psi,
        &joint_projector(Detector::CPlusInf, Detector::CMinusInf),
    )?;
    report.insert(
        ids::JOINT_CP_INF_CM_INF,
        RelationEntry::new(joint_cc, Some(0.0), 0.0),
    );
    let p = conditional_probability(&psi, &det.c_plus_inf, &det.d_minus_inf)?;
    report.insert(
        ids::COND_DM_INF_GIVEN_CP_INF,
        RelationEntry::new(p, Some(1.0), 1.0),
    );
    let p = conditional_probability(&psi, &det.c_minus_inf, &det.d_plus_inf)?;
    report.insert(
        ids::COND_DP_INF_GIVEN_CM_INF,
        RelationEntry::new(p, Some(1.0), 1.0),
    );
    let joint_dd = born_probability(
        &psi,
        &joint_projector(Detector::DPlusInf, Detector::DMinusInf),
    )?;
    report.insert(
        ids::JOINT_DP_INF_DM_INF,
        RelationEntry::new(joint_dd, None, 0.25),
    );
    Ok(report)
}

/// The `0`-detector links: a click at `D∓(0)` forces `C±(∞)`.
pub fn verify_chain() -> Result<GedankenReport> {
    let psi = build_state();
    let det = build_detectors();
    let mut report = GedankenReport::default();
    let p = conditional_probability(&psi, &det.d_minus_0, &det.c_plus_inf)?;
    report.insert(
        ids::COND_CP_INF_GIVEN_DM_0,
        RelationEntry::new(p, Some(1.0), 1.0),
    );
    let p = conditional_probability(&psi, &det.d_plus_0, &det.c_minus_inf)?;
    report.insert(
        ids::COND_CM_INF_GIVEN_DP_0,
        RelationEntry::new(p, Some(1.0), 1.0),
    );
    let p = born_probability(&psi, &det.d_minus_0)?;
    report.insert(ids::PROB_DM_0, RelationEntry::new(p, None, 0.125));
    let p = born_probability(&psi, &det.d_plus_0)?;
    report.insert(ids::PROB_DP_0, RelationEntry::new(p, None, 0.125));
    let p = born_probability(&psi, &joint_projector(Detector::DPlus0, Detector::DMinus0))?;
    report.insert(ids::JOINT_DP_0_DM_0, RelationEntry::new(p, None, 0.0625));
    Ok(report)
}

/// `P(D⁻(∞) | D⁻(0))`: local realism says 1, reduction gives `Tr(D⁻(0)D⁻(∞))`.
pub fn disturbance_test_direct() -> Result<RelationEntry> {
    let psi = build_state();
    let det = build_detectors();
    let p = conditional_probability(&psi, &det.d_minus_0, &det.d_minus_inf)?;
    Ok(RelationEntry::new(p, Some(1.0), 0.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplementTest {
    /// Conditional on the full 5-dim space; the `γ` channel survives both
    /// complements.
    pub full_space: RelationEntry,
    /// `Tr(D̄⁻(0) D̄⁻(∞))` on the electron qubit alone.
    pub electron_sector: RelationEntry,
}

/// `P(not D⁻(0) | not D⁻(∞))` evaluated two ways.
pub fn disturbance_test_complement() -> Result<ComplementTest> {
    let psi = build_state();
    let det = build_detectors();
    let full = conditional_probability(
        &psi,
        &det.d_minus_inf.complement(),
        &det.d_minus_0.complement(),
    )?;
    let not_dm0 = Detector::DMinus0.local_projector().complement();
    let not_dminf = Detector::DMinusInf.local_projector().complement();
    let trace = not_dm0.product(&not_dminf)?.trace().re;
    Ok(ComplementTest {
        full_space: RelationEntry::new(full, Some(1.0), 0.75),
        electron_sector: RelationEntry::new(trace, Some(1.0), 0.5),
    })
}

/// Every relation above in one map.
pub fn full_report() -> Result<GedankenReport> {
    let mut report = verify_base_relations()?;
    report.extend(verify_chain()?);
    report.insert(ids::DIRECT_DISTURBANCE, disturbance_test_direct()?);
    let complement = disturbance_test_complement()?;
    report.insert(ids::COMPLEMENT_FULL, complement.full_space);
    report.insert(ids::COMPLEMENT_ELECTRON_TRACE, complement.electron_sector);
    Ok(report)
}

/// Disturbance of `D⁻(∞)` by a prior `D⁻(0)` measurement on the electron qubit.
pub fn electron_disturbance() -> Result<crate::qcore::DisturbanceMetrics> {
    disturbance_metrics(
        &Detector::DMinus0.local_projector(),
        &Detector::DMinusInf.local_projector(),
    )
}
