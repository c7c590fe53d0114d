//! Semiclassical spectra for two-body and three-identical-particle quantum
//! Hamiltonians in D >= 2 dimensions, with user-supplied kinetic and
//! potential functions.
//!
//! Three companion solvers share one circular-orbit machinery:
//!
//! - [`dos2`] / [`dos3`] — dominantly orbital state method: quantize the
//!   orbital motion on a circular orbit, then the radial motion as harmonic
//!   fluctuations around it. Reliable for large orbital and small radial
//!   excitations; exact for harmonic interactions.
//! - [`wkb`] — quantization for the degenerate D = 2, zero-angular-momentum
//!   case the circular-orbit system cannot handle.
//! - [`af`] — auxiliary-field (envelope theory) companion giving levels with
//!   a variational character decided by convexity, at the price of a strong
//!   degeneracy in the global quantum number.
//!
//! [`catalog`] holds closed-form reference results and published benchmark
//! values used to cross-validate the numeric pipeline; [`verify`] runs those
//! comparisons. Hamiltonians are written as expression strings (see
//! [`expr`]); natural units hbar = c = 1 throughout.

pub mod af;
pub mod catalog;
pub mod dos2;
pub mod dos3;
pub mod expr;
mod orbit;
mod quad;
pub mod report;
pub mod verify;
pub mod wkb;

pub use af::{af2_energy, af3_energy, classify_bound, AuxPotential, BoundClass, BoundReport};
pub use dos2::{
    anyon_lambda, dos_energy, dos_energy_lambda, dos_energy_squared, lambda_of, solve_r0,
    DosSolution, QuantumNumbers2B, SolveError, SolveOptions,
};
pub use dos3::{
    dos3_energy, dos3_energy_squared, effective_potential, QuantumNumbers3B, ThreeBodySpec,
};
pub use expr::{invert_monotone, parse, ExprError, Expression, Jet2};
pub use wkb::{wkb2_energy, wkb3_energy, WkbError, WkbOptions};
