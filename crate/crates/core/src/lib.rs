//! Mode-resolved response of a two-level (Unruh–DeWitt) detector crossing a
//! cylindrical 3+1D cavity, and the energy it deposits per field mode.
//!
//! The crate computes, for uniformly accelerated, constant-velocity and
//! Galilean-approximated worldlines along the cavity axis:
//!
//! * per-mode number expectation values `N_{l,n}/λ²` and energies `ω N_{l,n}/λ²`,
//! * total transition probabilities and resonant-mode validity ratios
//!   (the quality of single-/few-mode truncations),
//! * the relative error of the non-relativistic (Galilean) trajectory
//!   approximation,
//! * the 1+1D massive-field reduction of a long thin cavity, per-branch
//!   effective masses, and the fibre estimator `F` measuring the weight of
//!   radial branches beyond the first.
//!
//! Everything is nondimensionalized by the cavity length `L`; inputs are the
//! usual dimensionless groups (`aL`, `ΩL`, `ρ/L`, `v̄`). All results are
//! reported per coupling squared (`N/λ²`, `P/λ²`).
//!
//! The numerical substrate lives in [`specfun`] (Bessel functions and their
//! zeros, the complex error function via the Faddeeva function) and [`quad`]
//! (phase-aware quadrature for highly oscillatory crossing integrals).

// validation uses `!(x > 0.0)` so NaN fails closed
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cavity;
mod error;
pub mod numeric;
pub mod quad;
pub mod reduced1d;
pub mod response;
pub mod specfun;
pub mod trajectory;

pub use cavity::{CavityGeometry, ModeData, ModeIndex};
pub use error::Error;
pub use reduced1d::{FibreEstimate, Reduced1DField};
pub use response::{DetectorConfig, InitialState, ModeGrid, ResonantSelection, ValidityReport};
pub use trajectory::{CrossingTime, TrajectorySpec};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
