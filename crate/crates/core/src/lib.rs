//! Exact-arithmetic toolkit for a family of five-symbol Toeplitz sequences
//! built over mixed-radix odometers.
//!
//! The crate constructs the sequence family pointwise from digit
//! expansions, evaluates orbit-closure points with explicit knowledge
//! certificates, exhaustively checks the digit-doubling combinatorics
//! behind the non-saturation phenomenon, and verifies the diagonal-orbit
//! power-equality theory exactly on finite cyclic rotations. Everything is
//! integer or rational arithmetic; there is not a float in sight.
//!
//! Module map:
//!
//! - [`period`]: level moduli, cumulative periods, generator rules, config
//!   loading and the regular/irregular classification.
//! - [`odometer`]: mixed-radix digit streams with honest tails, the group
//!   operations and the defined-digit sets.
//! - [`toeplitz`]: pointwise sequence evaluation, skeletons, exact
//!   densities and essential periods.
//! - [`orbit`]: orbit-closure points, tri-state evaluation, fiber
//!   certificates, aperiodic partitions, proximality witnesses and the
//!   truncated orbit metric.
//! - [`saturation`]: the exhaustive digit-doubling check and the
//!   finite-scale non-saturation demonstration.
//! - [`ndfinite`]: diagonal-orbit sets of finite rotations, the power
//!   dichotomy, cell decompositions and rational multiple sets.

pub mod error;
pub mod ndfinite;
pub mod odometer;
pub mod orbit;
pub mod period;
pub mod saturation;
pub mod toeplitz;

pub use error::{Error, Result};
pub use odometer::{OdometerElement, Tail};
pub use period::{Classification, GeneratorRule, PeriodStructure};
pub use toeplitz::{Symbol, ToeplitzSequence};
