//! Acceleration-induced Pancharatnam-Berry phase of a uniformly accelerated
//! two-level detector coupled to a massless scalar field near zero, one, or
//! two plane mirrors.
//!
//! The detector (gap ħω₀, dimensionless coupling κ = λ²/ħc³) moves on a
//! Rindler trajectory parallel to the mirror plane(s). Its open-system
//! dynamics is fixed by the Kossakowski coefficients
//!
//! ```text
//! A = (κa/16πc) coth(πω₀c/a) Σₙ [J(Ln) − J(Ln + z₀)],   B = A tanh(πω₀c/a),
//! J(u) = sin((2ω₀c/a) asinh|au/c²|) / (|au/c²| √(1 + (au/c²)²)),
//! ```
//!
//! the image sum running over mirror reflections (n = 0 only for a single
//! mirror, the first term alone for free space). The geometric phase per
//! quasi-cycle of an initial state cos(θ/2)|+⟩ + sin(θ/2)|−⟩ is
//!
//! ```text
//! φ_B = −π(1 − cosθ) − (2π² sin²θ/ω₀)(2B + A cosθ),
//! ```
//!
//! and the interferometric observable is δφ_B = φ_B − lim_{a→0} φ_B.
//!
//! Modules:
//! - [`units`]: physical constants, SI ↔ dimensionless conversion, and the
//!   interferometer feasibility arithmetic.
//! - [`kernel`]: the image sum and the rate coefficients A, B (accelerated
//!   and inertial), with controlled truncation.
//! - [`phase`]: Berry phase, phase difference, and the closed-form reduced
//!   density matrix.
//! - [`oracle`]: independent numerical verification of the closed forms via
//!   regulated Fourier integrals and brute-force series.
//! - [`explore`]: parameter sweeps, peak finding, truncation convergence
//!   studies, and minimum-acceleration feasibility searches.

// Validation guards use `!(x > 0.0)` deliberately: the negation also
// rejects NaN, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod explore;
pub mod kernel;
pub mod oracle;
pub mod phase;
pub mod units;

pub use error::{Error, Result};
pub use kernel::{RateCoefficients, SumDiagnostics, TruncationMode, TruncationPolicy};
pub use phase::{DetectorState, PhaseResult};
pub use units::{
    ConstantsProfile, LabGeometry, LabSetup, PhysicalConstants, ReducedGeometry, ReducedSetup,
    Scenario,
};
