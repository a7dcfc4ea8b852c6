//! Local-realism satisfiability over dichotomic hidden-variable values.
//!
//! Quantum facts of probability exactly 0 or 1 become constraints on
//! assignments `λ ↦ {0, 1}`:
//!
//! * `P(Y | X) = 1` becomes the implication `X → Y`,
//! * `⟨X Y⟩ = 0` becomes the exclusion `¬(X ∧ Y)`,
//! * `⟨X Y⟩ > 0` requires that some admissible assignment has `X ∧ Y`.
//!
//! [`check`] enumerates all `2^|V|` assignments. When a required event is
//! unrealizable it returns a paradox [`Certificate`] whose forced chain is
//! found by unit propagation and can be re-verified with [`replay`].

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gedanken::{self, Detector};
use crate::hardy4::{self, HardyError};
use crate::qcore::{born_probability, conditional_probability, QuantumError, Tensor};

pub const MAX_VARIABLES: usize = 20;
/// A quantum probability must be this close to 0 or 1 to become a constraint.
pub const GATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LogicError {
    #[error("constraint `{constraint}` references undeclared variable `{variable}`")]
    UndeclaredVariable {
        constraint: String,
        variable: String,
    },
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("constraint id `{0}` used twice")]
    DuplicateConstraint(String),
    #[error("{0} variables exceed the enumeration limit of {MAX_VARIABLES}")]
    TooManyVariables(usize),
    #[error(
        "constraint `{constraint}` not justified: quantum value {value} (expected {expected})"
    )]
    Ungated {
        constraint: String,
        value: f64,
        expected: &'static str,
    },
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Hardy(#[from] HardyError),
}

pub type Result<T> = std::result::Result<T, LogicError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub var: String,
    pub value: bool,
}

impl Literal {
    pub fn pos(var: &str) -> Self {
        Self {
            var: var.to_string(),
            value: true,
        }
    }

    pub fn neg(var: &str) -> Self {
        Self {
            var: var.to_string(),
            value: false,
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            var: self.var.clone(),
            value: !self.value,
        }
    }
}

impl std::fmt::Display for Literal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}={}", self.var, u8::from(self.value))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Implication {
    pub id: String,
    pub antecedent: Vec<Literal>,
    pub consequent: Literal,
}

impl std::fmt::Display for Implication {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} -> {}",
            render_conjunction(&self.antecedent),
            self.consequent
        )
    }
}

/// A conjunction with a name: forbidden when used as an exclusion, required
/// to be realizable when used as a positive event.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conjunction {
    pub id: String,
    pub literals: Vec<Literal>,
}

/// The quantum number that licensed a constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub constraint: String,
    pub quantity: String,
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub variables: Vec<String>,
    pub implications: Vec<Implication>,
    pub exclusions: Vec<Conjunction>,
    pub required_positive: Vec<Conjunction>,
    #[serde(default)]
    pub evidence: Vec<Evidence>,
}

fn render_conjunction(literals: &[Literal]) -> String {
    if literals.is_empty() {
        return "true".to_string();
    }
    literals
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" & ")
}

impl ConstraintSystem {
    pub fn new<S: AsRef<str>>(variables: &[S]) -> Self {
        Self {
            variables: variables.iter().map(|v| v.as_ref().to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn implication(mut self, id: &str, antecedent: &[Literal], consequent: Literal) -> Self {
        self.implications.push(Implication {
            id: id.to_string(),
            antecedent: antecedent.to_vec(),
            consequent,
        });
        self
    }

    pub fn exclusion(mut self, id: &str, literals: &[Literal]) -> Self {
        self.exclusions.push(Conjunction {
            id: id.to_string(),
            literals: literals.to_vec(),
        });
        self
    }

    pub fn required(mut self, id: &str, literals: &[Literal]) -> Self {
        self.required_positive.push(Conjunction {
            id: id.to_string(),
            literals: literals.to_vec(),
        });
        self
    }

    fn with_evidence(mut self, constraint: &str, quantity: String, value: f64) -> Self {
        self.evidence.push(Evidence {
            constraint: constraint.to_string(),
            quantity,
            value,
        });
        self
    }

    pub fn without_exclusions(mut self) -> Self {
        let ids: BTreeSet<String> = self.exclusions.drain(..).map(|c| c.id).collect();
        self.evidence.retain(|e| !ids.contains(&e.constraint));
        self
    }

    pub fn without_required(mut self) -> Self {
        let ids: BTreeSet<String> = self.required_positive.drain(..).map(|c| c.id).collect();
        self.evidence.retain(|e| !ids.contains(&e.constraint));
        self
    }

    /// Renders a constraint by id, for audit output.
    pub fn describe(&self, id: &str) -> Option<String> {
        if let Some(i) = self.implications.iter().find(|c| c.id == id) {
            return Some(i.to_string());
        }
        if let Some(e) = self.exclusions.iter().find(|c| c.id == id) {
            return Some(format!("not ({})", render_conjunction(&e.literals)));
        }
        self.required_positive
            .iter()
            .find(|c| c.id == id)
            .map(|r| format!("possible ({})", render_conjunction(&r.literals)))
    }

    fn compile(&self) -> Result<Compiled> {
        if self.variables.len() > MAX_VARIABLES {
            return Err(LogicError::TooManyVariables(self.variables.len()));
        }
        let mut index = BTreeMap::new();
        for (i, v) in self.variables.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(LogicError::DuplicateVariable(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        let ids = self
            .implications
            .iter()
            .map(|c| &c.id)
            .chain(self.exclusions.iter().map(|c| &c.id))
            .chain(self.required_positive.iter().map(|c| &c.id));
        for id in ids {
            if !seen.insert(id.clone()) {
                return Err(LogicError::DuplicateConstraint(id.clone()));
            }
        }
        let lit = |constraint: &str, l: &Literal| -> Result<Lit> {
            index
                .get(&l.var)
                .map(|&var| Lit {
                    var,
                    value: l.value,
                })
                .ok_or_else(|| LogicError::UndeclaredVariable {
                    constraint: constraint.to_string(),
                    variable: l.var.clone(),
                })
        };
        let conj = |id: &str, ls: &[Literal]| -> Result<Mask> {
            let lits = ls.iter().map(|l| lit(id, l)).collect::<Result<Vec<_>>>()?;
            Ok(Mask::from_lits(&lits))
        };

        let mut clauses = Vec::new();
        for c in &self.implications {
            let mut lits: Vec<Lit> = c
                .antecedent
                .iter()
                .map(|l| lit(&c.id, l).map(Lit::negated))
                .collect::<Result<_>>()?;
            lits.push(lit(&c.id, &c.consequent)?);
            clauses.push(Clause {
                id: c.id.clone(),
                kind: ClauseKind::Implication,
                lits,
            });
        }
        for c in &self.exclusions {
            let lits = c
                .literals
                .iter()
                .map(|l| lit(&c.id, l).map(Lit::negated))
                .collect::<Result<_>>()?;
            clauses.push(Clause {
                id: c.id.clone(),
                kind: ClauseKind::Exclusion,
                lits,
            });
        }
        let required = self
            .required_positive
            .iter()
            .map(|r| Ok((r.id.clone(), conj(&r.id, &r.literals)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Compiled {
            n: self.variables.len(),
            clauses,
            required,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lit {
    var: usize,
    value: bool,
}

impl Lit {
    fn negated(self) -> Self {
        Self {
            var: self.var,
            value: !self.value,
        }
    }
}

/// A conjunction as (care bits, required values); unsatisfiable when it
/// names a variable with both polarities.
#[derive(Debug, Clone, Copy)]
struct Mask {
    care: u32,
    values: u32,
    contradictory: bool,
}

impl Mask {
    fn from_lits(lits: &[Lit]) -> Self {
        let mut m = Mask {
            care: 0,
            values: 0,
            contradictory: false,
        };
        for l in lits {
            let bit = 1u32 << l.var;
            let v = if l.value { bit } else { 0 };
            if m.care & bit != 0 && m.values & bit != v {
                m.contradictory = true;
            }
            m.care |= bit;
            m.values |= v;
        }
        m
    }

    fn holds(&self, assignment: u32) -> bool {
        !self.contradictory && assignment & self.care == self.values
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ClauseKind {
    Implication,
    Exclusion,
}

/// Disjunction of literals.
#[derive(Debug, Clone)]
struct Clause {
    id: String,
    kind: ClauseKind,
    lits: Vec<Lit>,
}

impl Clause {
    fn satisfied_by(&self, assignment: u32) -> bool {
        self.lits
            .iter()
            .any(|l| (assignment >> l.var & 1 == 1) == l.value)
    }
}

struct Compiled {
    n: usize,
    clauses: Vec<Clause>,
    required: Vec<(String, Mask)>,
}

impl Compiled {
    fn admissible(&self, assignment: u32) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(assignment))
    }

    fn space(&self) -> u64 {
        1u64 << self.n
    }

    /// Indices of required events realized by some admissible assignment,
    /// plus the first such assignment for each and the admissible count.
    fn enumerate(&self, order: impl Iterator<Item = u32>) -> Enumeration {
        let mut first_witness: Vec<Option<u32>> = vec![None; self.required.len()];
        let mut any_admissible = None;
        let mut admissible = 0u64;
        for a in order {
            if !self.admissible(a) {
                continue;
            }
            admissible += 1;
            any_admissible.get_or_insert(a);
            for (slot, (_, mask)) in first_witness.iter_mut().zip(&self.required) {
                if slot.is_none() && mask.holds(a) {
                    *slot = Some(a);
                }
            }
        }
        Enumeration {
            first_witness,
            any_admissible,
            admissible,
        }
    }
}

struct Enumeration {
    first_witness: Vec<Option<u32>>,
    any_admissible: Option<u32>,
    admissible: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Satisfiable,
    Paradox,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Required event this assignment realizes; `None` for a system with no
    /// required events.
    pub event: Option<String>,
    pub assignment: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainStep {
    pub literal: Literal,
    /// Required event that seeds the literal, or the constraint forcing it.
    pub constraint: String,
    pub rendered: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub failing_event: Option<String>,
    pub forced_chain: Vec<ChainStep>,
    /// Constraint falsified at the end of the chain. `None` when unit
    /// propagation stalls and the certificate rests on the empty admissible
    /// set instead.
    pub violated: Option<String>,
    pub admissible_assignments: u64,
    pub assignments_checked: u64,
}

fn decode(system: &ConstraintSystem, assignment: u32) -> BTreeMap<String, bool> {
    system
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), assignment >> i & 1 == 1))
        .collect()
}

/// Exhaustive satisfiability check with certificate extraction.
pub fn check(system: &ConstraintSystem) -> Result<Certificate> {
    let compiled = system.compile()?;
    let space = compiled.space();
    let en = compiled.enumerate((0..space).map(|a| a as u32));

    let failing = en.first_witness.iter().position(Option::is_none);
    let Some(failing) = failing else {
        let witnesses = if compiled.required.is_empty() {
            en.any_admissible
                .map(|a| Witness {
                    event: None,
                    assignment: decode(system, a),
                })
                .into_iter()
                .collect()
        } else {
            compiled
                .required
                .iter()
                .zip(&en.first_witness)
                .map(|((id, _), w)| Witness {
                    event: Some(id.clone()),
                    assignment: decode(system, w.expect("all events realized")),
                })
                .collect()
        };
        return Ok(Certificate {
            status: Status::Satisfiable,
            witnesses,
            failing_event: None,
            forced_chain: Vec::new(),
            violated: None,
            admissible_assignments: en.admissible,
            assignments_checked: space,
        });
    };

    let event = &system.required_positive[failing];
    let (forced_chain, violated) = propagate(system, &compiled, event);
    Ok(Certificate {
        status: Status::Paradox,
        witnesses: Vec::new(),
        failing_event: Some(event.id.clone()),
        forced_chain,
        violated,
        admissible_assignments: en.admissible,
        assignments_checked: space,
    })
}

/// Unit propagation from the literals of `event`. Exclusions are preferred
/// as the terminal conflict.
fn propagate(
    system: &ConstraintSystem,
    compiled: &Compiled,
    event: &Conjunction,
) -> (Vec<ChainStep>, Option<String>) {
    let mut values: Vec<Option<bool>> = vec![None; compiled.n];
    let mut chain = Vec::new();
    let var_index = |name: &str| system.variables.iter().position(|v| v == name);

    for l in &event.literals {
        let i = var_index(&l.var).expect("compiled system");
        if values[i] == Some(!l.value) {
            // self-contradictory event; enumeration alone certifies it
            return (chain, None);
        }
        if values[i].is_none() {
            values[i] = Some(l.value);
            chain.push(ChainStep {
                literal: l.clone(),
                constraint: event.id.clone(),
                rendered: format!("{l} (assumed: {})", event.id),
            });
        }
    }

    loop {
        let falsified = |c: &&Clause| c.lits.iter().all(|l| values[l.var] == Some(!l.value));
        let conflict = compiled
            .clauses
            .iter()
            .filter(falsified)
            .min_by_key(|c| c.kind != ClauseKind::Exclusion);
        if let Some(c) = conflict {
            return (chain, Some(c.id.clone()));
        }
        let unit = compiled.clauses.iter().find_map(|c| {
            if c.lits.iter().any(|l| values[l.var] == Some(l.value)) {
                return None;
            }
            let mut open = c.lits.iter().filter(|l| values[l.var].is_none());
            match (open.next(), open.next()) {
                (Some(l), None) => Some((c, *l)),
                _ => None,
            }
        });
        let Some((clause, l)) = unit else {
            return (chain, None);
        };
        values[l.var] = Some(l.value);
        let literal = Literal {
            var: system.variables[l.var].clone(),
            value: l.value,
        };
        let rule = system.describe(&clause.id).unwrap_or_default();
        chain.push(ChainStep {
            rendered: format!("{literal} by {} [{rule}]", clause.id),
            literal,
            constraint: clause.id.clone(),
        });
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("step {step}: {reason}")]
    BadStep { step: usize, reason: String },
    #[error("witness for `{event:?}` is not admissible or misses its event")]
    BadWitness { event: Option<String> },
    #[error("certificate verdict is not supported: {0}")]
    Verdict(String),
}

/// Independently re-verifies a certificate against its system.
pub fn replay(
    system: &ConstraintSystem,
    cert: &Certificate,
) -> std::result::Result<(), ReplayError> {
    let compiled = system.compile()?;
    let encode = |assignment: &BTreeMap<String, bool>| -> Option<u32> {
        if assignment.len() != system.variables.len() {
            return None;
        }
        let mut a = 0u32;
        for (i, v) in system.variables.iter().enumerate() {
            if *assignment.get(v)? {
                a |= 1 << i;
            }
        }
        Some(a)
    };

    match cert.status {
        Status::Satisfiable => {
            for w in &cert.witnesses {
                let ok = encode(&w.assignment).is_some_and(|a| {
                    let event_ok = match &w.event {
                        None => true,
                        Some(id) => compiled
                            .required
                            .iter()
                            .find(|(rid, _)| rid == id)
                            .is_some_and(|(_, m)| m.holds(a)),
                    };
                    compiled.admissible(a) && event_ok
                });
                if !ok {
                    return Err(ReplayError::BadWitness {
                        event: w.event.clone(),
                    });
                }
            }
            let covered: BTreeSet<&str> = cert
                .witnesses
                .iter()
                .filter_map(|w| w.event.as_deref())
                .collect();
            if let Some((id, _)) = compiled
                .required
                .iter()
                .find(|(id, _)| !covered.contains(id.as_str()))
            {
                return Err(ReplayError::Verdict(format!("no witness for `{id}`")));
            }
            Ok(())
        }
        Status::Paradox => replay_paradox(system, &compiled, cert),
    }
}

fn replay_paradox(
    system: &ConstraintSystem,
    compiled: &Compiled,
    cert: &Certificate,
) -> std::result::Result<(), ReplayError> {
    let event_id = cert
        .failing_event
        .as_ref()
        .ok_or_else(|| ReplayError::Verdict("paradox without failing event".into()))?;
    let (_, event_mask) = compiled
        .required
        .iter()
        .find(|(id, _)| id == event_id)
        .ok_or_else(|| ReplayError::Verdict(format!("unknown event `{event_id}`")))?;
    let event = system
        .required_positive
        .iter()
        .find(|r| &r.id == event_id)
        .expect("event present in compiled system");

    let Some(violated) = &cert.violated else {
        // No propagation conflict: fall back to confirming the admissible
        // set for the event is empty.
        let realizable = (0..compiled.space())
            .map(|a| a as u32)
            .any(|a| compiled.admissible(a) && event_mask.holds(a));
        return if realizable {
            Err(ReplayError::Verdict(format!("`{event_id}` is realizable")))
        } else {
            Ok(())
        };
    };

    let mut values: BTreeMap<usize, bool> = BTreeMap::new();
    let index = |name: &str, step: usize| {
        system
            .variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ReplayError::BadStep {
                step,
                reason: format!("unknown variable `{name}`"),
            })
    };
    for (step, s) in cert.forced_chain.iter().enumerate() {
        let var = index(&s.literal.var, step)?;
        if values.contains_key(&var) {
            return Err(ReplayError::BadStep {
                step,
                reason: format!("`{}` assigned twice", s.literal.var),
            });
        }
        let licensed = if &s.constraint == event_id {
            event.literals.contains(&s.literal)
        } else {
            let clause = compiled
                .clauses
                .iter()
                .find(|c| c.id == s.constraint)
                .ok_or_else(|| ReplayError::BadStep {
                    step,
                    reason: format!("unknown constraint `{}`", s.constraint),
                })?;
            // Every other literal of the clause must already be false.
            clause
                .lits
                .iter()
                .any(|l| l.var == var && l.value == s.literal.value)
                && clause
                    .lits
                    .iter()
                    .filter(|l| l.var != var)
                    .all(|l| values.get(&l.var) == Some(&!l.value))
        };
        if !licensed {
            return Err(ReplayError::BadStep {
                step,
                reason: format!("{} not licensed by `{}`", s.literal, s.constraint),
            });
        }
        values.insert(var, s.literal.value);
    }

    for l in &event.literals {
        let var = index(&l.var, cert.forced_chain.len())?;
        if values.get(&var) != Some(&l.value) {
            return Err(ReplayError::Verdict(format!("chain never assumes {l}")));
        }
    }

    let clause = compiled
        .clauses
        .iter()
        .find(|c| &c.id == violated)
        .ok_or_else(|| ReplayError::Verdict(format!("unknown constraint `{violated}`")))?;
    if clause
        .lits
        .iter()
        .all(|l| values.get(&l.var) == Some(&!l.value))
    {
        Ok(())
    } else {
        Err(ReplayError::Verdict(format!(
            "`{violated}` is not violated"
        )))
    }
}

/// Verdict from a second enumeration in reflected Gray-code order.
pub fn verdict_gray_code(system: &ConstraintSystem) -> Result<Status> {
    let compiled = system.compile()?;
    let order = (0..compiled.space()).map(|i| (i ^ (i >> 1)) as u32);
    let en = compiled.enumerate(order);
    Ok(if en.first_witness.iter().all(Option::is_some) {
        Status::Satisfiable
    } else {
        Status::Paradox
    })
}

/// Resolves each implication `A → X` against a two-literal exclusion
/// `¬(X ∧ Y)` to `A → ¬Y`.
pub fn derive_two_step(system: &ConstraintSystem) -> Result<Vec<Implication>> {
    system.compile()?;
    let mut derived = Vec::new();
    for imp in &system.implications {
        for excl in system.exclusions.iter().filter(|e| e.literals.len() == 2) {
            let Some(pos) = excl.literals.iter().position(|l| *l == imp.consequent) else {
                continue;
            };
            let other = &excl.literals[1 - pos];
            let candidate = Implication {
                id: format!("{}+{}", imp.id, excl.id),
                antecedent: imp.antecedent.clone(),
                consequent: other.negated(),
            };
            let duplicate = derived.iter().any(|d: &Implication| {
                d.antecedent == candidate.antecedent && d.consequent == candidate.consequent
            });
            if !duplicate {
                derived.push(candidate);
            }
        }
    }
    Ok(derived)
}

fn gate_one(constraint: &str, value: f64) -> Result<f64> {
    if (value - 1.0).abs() <= GATE_TOL {
        Ok(value)
    } else {
        Err(LogicError::Ungated {
            constraint: constraint.to_string(),
            value,
            expected: "1",
        })
    }
}

fn gate_zero(constraint: &str, value: f64) -> Result<f64> {
    if value.abs() <= GATE_TOL {
        Ok(value)
    } else {
        Err(LogicError::Ungated {
            constraint: constraint.to_string(),
            value,
            expected: "0",
        })
    }
}

pub mod hardy_ids {
    pub const D1_IMPLIES_U2: &str = "P(U2|D1)=1";
    pub const D2_IMPLIES_U1: &str = "P(U1|D2)=1";
    pub const EXCLUDE_U1U2: &str = "<U1U2>=0";
    pub const REQUIRE_D1D2: &str = "<D1D2>>0";
    pub const REQUIRE_D1: &str = "<D1>>0";
}

/// Hardy's four facts for the two-qubit model, each checked numerically
/// before it becomes a constraint. The positive `D1 ∧ D2` event is only
/// added when `⟨D₁D₂⟩` is non-zero.
pub fn hardy_system(alpha: f64) -> Result<ConstraintSystem> {
    use hardy_ids::*;
    let model = hardy4::build_model(alpha)?;
    let psi = &model.psi;
    let p_u2_d1 = gate_one(
        D1_IMPLIES_U2,
        conditional_probability(psi, &model.d1, &model.u2)?,
    )?;
    let p_u1_d2 = gate_one(
        D2_IMPLIES_U1,
        conditional_probability(psi, &model.d2, &model.u1)?,
    )?;
    let u1u2 = model.u_local.tensor(&model.u_local);
    let p_u1u2 = gate_zero(EXCLUDE_U1U2, born_probability(psi, &u1u2)?)?;
    let d1d2 = model.d_local.tensor(&model.d_local);
    let p_d1d2 = born_probability(psi, &d1d2)?;

    let mut system = ConstraintSystem::new(&["D1", "D2", "U1", "U2"])
        .implication(D1_IMPLIES_U2, &[Literal::pos("D1")], Literal::pos("U2"))
        .with_evidence(D1_IMPLIES_U2, "P(U2|D1)".into(), p_u2_d1)
        .implication(D2_IMPLIES_U1, &[Literal::pos("D2")], Literal::pos("U1"))
        .with_evidence(D2_IMPLIES_U1, "P(U1|D2)".into(), p_u1_d2)
        .exclusion(EXCLUDE_U1U2, &[Literal::pos("U1"), Literal::pos("U2")])
        .with_evidence(EXCLUDE_U1U2, "<U1U2>".into(), p_u1u2);
    if p_d1d2 > GATE_TOL {
        system = system
            .required(REQUIRE_D1D2, &[Literal::pos("D1"), Literal::pos("D2")])
            .with_evidence(REQUIRE_D1D2, "<D1D2>".into(), p_d1d2);
    }
    Ok(system)
}

/// Result of the shortened argument that needs only `P(U2|D1) = 1`,
/// `⟨U1U2⟩ = 0` and a positive `⟨D1⟩`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoStepAnalysis {
    pub system: ConstraintSystem,
    pub certificate: Certificate,
    pub derived: Vec<Implication>,
    /// Hidden-variables value of `P(Ū₁|D₁)` implied by `D1 → ¬U1`.
    pub hv_prediction: f64,
    /// Quantum `P(Ū₁|D₁) = c̄`.
    pub quantum_value: f64,
    pub discrepancy: f64,
}

pub fn two_step_analysis(alpha: f64) -> Result<TwoStepAnalysis> {
    let model = hardy4::build_model(alpha)?;
    let p_d1 = born_probability(&model.psi, &model.d1)?;
    let mut system = hardy_system(alpha)?.without_required();
    if p_d1 > GATE_TOL {
        system = system
            .required(hardy_ids::REQUIRE_D1, &[Literal::pos("D1")])
            .with_evidence(hardy_ids::REQUIRE_D1, "<D1>".into(), p_d1);
    }
    let certificate = check(&system)?;
    let derived = derive_two_step(&system)?;
    let implies_not_u1 = derived
        .iter()
        .any(|d| d.antecedent == [Literal::pos("D1")] && d.consequent == Literal::neg("U1"));
    let hv_prediction = if implies_not_u1 { 1.0 } else { f64::NAN };
    let quantum_value = conditional_probability(&model.psi, &model.d1, &model.u1.complement())?;
    Ok(TwoStepAnalysis {
        system,
        certificate,
        derived,
        hv_prediction,
        quantum_value,
        discrepancy: (hv_prediction - quantum_value).abs(),
    })
}

/// Hardy's interferometer as a constraint system over the eight detector
/// outcomes, every constraint backed by its quantum value.
pub fn gedanken_system() -> Result<ConstraintSystem> {
    use Detector::*;
    let psi = gedanken::build_state();
    let det = gedanken::build_detectors();
    let names: Vec<&str> = Detector::ALL.iter().map(|d| d.name()).collect();
    let mut system = ConstraintSystem::new(&names);

    let id = format!("<{}{}>=0", CPlusInf.name(), CMinusInf.name());
    let p = born_probability(&psi, &gedanken::joint_projector(CPlusInf, CMinusInf))?;
    system = system
        .exclusion(
            &id,
            &[
                Literal::pos(CPlusInf.name()),
                Literal::pos(CMinusInf.name()),
            ],
        )
        .with_evidence(
            &id,
            format!("<{} {}>", CPlusInf.name(), CMinusInf.name()),
            gate_zero(&id, p)?,
        );

    for (given, then) in [
        (CPlusInf, DMinusInf),
        (CMinusInf, DPlusInf),
        (DMinus0, CPlusInf),
        (DPlus0, CMinusInf),
    ] {
        let id = format!("P({}|{})=1", then.name(), given.name());
        let p = conditional_probability(&psi, det.get(given), det.get(then))?;
        system = system
            .implication(
                &id,
                &[Literal::pos(given.name())],
                Literal::pos(then.name()),
            )
            .with_evidence(
                &id,
                format!("P({}|{})", then.name(), given.name()),
                gate_one(&id, p)?,
            );
    }

    let id = format!("<{}{}>>0", DPlus0.name(), DMinus0.name());
    let p = born_probability(&psi, &gedanken::joint_projector(DPlus0, DMinus0))?;
    if p > GATE_TOL {
        system = system
            .required(
                &id,
                &[Literal::pos(DPlus0.name()), Literal::pos(DMinus0.name())],
            )
            .with_evidence(&id, format!("<{} {}>", DPlus0.name(), DMinus0.name()), p);
    }
    Ok(system)
}
