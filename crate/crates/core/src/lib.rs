//! Numerical toolkit for positive harmonic functions on the unit disc.
//!
//! The crate is organised bottom-up:
//!
//! * [`hyperbolic`] holds the disc `𝕌 = {|z| < 1}` and the right half-plane
//!   `𝕂 = {Re w > 0}` with their hyperbolic densities, distances, the disc
//!   automorphisms `φ_c` and the Cayley maps between the two models.
//! * [`herglotz`] represents a positive harmonic function by a finite atomic
//!   measure on the unit circle and evaluates `u`, its holomorphic completion
//!   `f` with `Re f = u`, `f(0) = u(0)`, gradients and `|f^h(0)|`.
//! * [`bounds`] evaluates the classical and the sharpened Harnack intervals,
//!   the Beardon–Carne right-hand side, the two-step distance identity used in
//!   their comparison, the gradient and distance contraction slacks, and the
//!   extremal functions that make the sharpened bound attained.
//! * [`harness`] runs every property as a seeded, parallel, reproducible
//!   suite and aggregates the outcome into a [`harness::VerificationReport`].
//! * [`oracle`] contains the independent numerical checks (quadrature and
//!   finite differences) the suites compare against.

// `!(a < b)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod harness;
pub mod herglotz;
pub mod hyperbolic;
pub mod oracle;

pub use num_complex::Complex64;

pub use bounds::{BoundInterval, InequalitySlack};
pub use error::{Error, Result};
pub use harness::{SuiteRecord, TrialConfig, VerificationReport};
pub use herglotz::{Atom, GradientVector, HerglotzMeasure};
pub use hyperbolic::{DiscPoint, EuclideanDisc, HalfPlanePoint, HyperbolicRadius, RealInterval};
