//! Hardy's paradox as a set of checkable computations.
//!
//! * [`qcore`]: states, projectors, conditional measurement, disturbance.
//! * [`gedanken`]: the electron-positron interferometer.
//! * [`hardy4`]: the parametric two-qubit model, sweep and optimizer.
//! * [`bellhv`] / [`lambda`]: Bell's single-qubit hidden-variables model
//!   and the λ-interval algebra it lives on.
//! * [`hvlogic`]: exhaustive local-realism checker with replayable
//!   paradox certificates.

pub mod bellhv;
pub mod gedanken;
pub mod hardy4;
pub mod hvlogic;
pub mod lambda;
pub mod qcore;

pub use bellhv::{BlochVector, ConditionalComparison};
pub use hardy4::{HardyMetrics, HardyModel, HardyParams};
pub use hvlogic::{Certificate, ConstraintSystem, Status};
pub use lambda::LambdaSet;
pub use qcore::{DisturbanceMetrics, Projector, StateVector};
