//! Two-body dominantly orbital state solver.
//!
//! For a Hamiltonian T(p) + V(r) the orbital motion is quantized on a
//! circular orbit through the orbital factor `lambda = l + (D-2)/2`, and the
//! radial motion is quantized as harmonic fluctuations around that orbit.
//! The total energy splits as E = E0 + deltaE with deltaE = omega*(n + 1/2);
//! the squared-energy variant E0^2 + 2*E0*deltaE drops the (n + 1/2)^2 term
//! and is the better estimate for linear confinement.

use crate::expr::Expression;
use crate::orbit::{self, Orbit};

pub use crate::orbit::{SolveError, SolveOptions};

/// Two-body quantum numbers: dimension D >= 2, orbital l, radial n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers2B {
    pub dim: u32,
    pub l: u32,
    pub n: u32,
}

impl QuantumNumbers2B {
    pub fn new(dim: u32, l: u32, n: u32) -> Result<Self, SolveError> {
        if dim < 2 {
            return Err(SolveError::InvalidInput(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        Ok(QuantumNumbers2B { dim, l, n })
    }

    /// Orbital factor l + (D-2)/2; zero only for D=2, l=0.
    pub fn lambda(&self) -> f64 {
        lambda_of(self.l, self.dim)
    }
}

/// Orbital factor l + (D-2)/2 replacing the l(l+D-2) eigenvalue.
pub fn lambda_of(l: u32, dim: u32) -> f64 {
    debug_assert!(dim >= 2);
    l as f64 + (dim as f64 - 2.0) / 2.0
}

/// Effective orbital factor |l - alpha| for a two-anyon system (D = 2).
///
/// `alpha` interpolates from bosons (0) to fermions (1). The result feeds
/// [`solve_r0`] / [`dos_energy_lambda`] in place of the integer-l factor.
pub fn anyon_lambda(l: u32, alpha: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&alpha));
    (l as f64 - alpha).abs()
}

/// A solved circular orbit with its harmonic radial correction.
#[derive(Debug, Clone)]
pub struct DosSolution {
    /// Physical circular-orbit radius r0.
    pub radius: f64,
    /// Circular energy E0 (total energy of the orbit, no radial motion).
    pub circular_energy: f64,
    /// Effective mass of the radial oscillator.
    pub effective_mass: f64,
    /// Effective stiffness of the radial oscillator.
    pub stiffness: f64,
    /// Radial correction deltaE = sqrt(k/mu)*(quantum factor).
    pub radial_correction: f64,
    /// Total energy E0 + deltaE.
    pub energy: f64,
    /// Squared-energy variant E0^2 + 2*E0*deltaE.
    pub energy_squared: f64,
    /// Stationarity residual at `radius`.
    pub residual: f64,
    /// All stationary radii bracketed by the scan.
    pub roots: Vec<f64>,
}

/// Solve the circular-orbit condition lambda*T'(lambda/r0)/r0^2 = V'(r0).
///
/// Among multiple stationary radii the one minimizing the circular energy is
/// returned; [`solve_orbit`] exposes the discarded roots.
pub fn solve_r0(
    kinetic: &Expression,
    potential: &Expression,
    lambda: f64,
    opts: &SolveOptions,
) -> Result<f64, SolveError> {
    Ok(orbit::find_orbit(kinetic, potential, lambda, opts)?.radius)
}

/// As [`solve_r0`], returning the full search diagnostics.
pub fn solve_orbit(
    kinetic: &Expression,
    potential: &Expression,
    lambda: f64,
    opts: &SolveOptions,
) -> Result<Orbit, SolveError> {
    orbit::find_orbit(kinetic, potential, lambda, opts)
}

pub(crate) struct RadialOscillator {
    pub orbit: Orbit,
    pub circular_energy: f64,
    pub effective_mass: f64,
    pub stiffness: f64,
    /// Angular frequency sqrt(k/mu) of the radial oscillator.
    pub omega: f64,
}

/// Locate the orbit and expand the radial motion to harmonic order.
pub(crate) fn radial_oscillator(
    kinetic: &Expression,
    potential: &Expression,
    lambda: f64,
    opts: &SolveOptions,
) -> Result<RadialOscillator, SolveError> {
    let orbit = orbit::find_orbit(kinetic, potential, lambda, opts)?;
    let r0 = orbit.radius;
    let t = kinetic.eval_jet2(lambda / r0)?;
    let v = potential.eval_jet2(r0)?;
    if !(t.d1 > 0.0) {
        return Err(SolveError::InvalidInput(format!(
            "kinetic derivative must be positive at the orbit momentum, got T'={}",
            t.d1
        )));
    }
    let effective_mass = lambda / (r0 * t.d1);
    let stiffness =
        lambda / r0.powi(4) * (2.0 * r0 * t.d1 + lambda * t.d2) + v.d2;
    if !(stiffness > 0.0) {
        return Err(SolveError::UnstableOrbit { radius: r0, stiffness });
    }
    Ok(RadialOscillator {
        orbit,
        circular_energy: t.value + v.value,
        effective_mass,
        stiffness,
        omega: (stiffness / effective_mass).sqrt(),
    })
}

/// Full two-body solution for the quantum numbers (D, l, n).
pub fn dos_energy(
    kinetic: &Expression,
    potential: &Expression,
    qn: &QuantumNumbers2B,
    opts: &SolveOptions,
) -> Result<DosSolution, SolveError> {
    dos_energy_lambda(kinetic, potential, qn.lambda(), qn.n, opts)
}

/// Two-body solution with an explicit orbital factor (e.g. an anyon |l - alpha|).
pub fn dos_energy_lambda(
    kinetic: &Expression,
    potential: &Expression,
    lambda: f64,
    n: u32,
    opts: &SolveOptions,
) -> Result<DosSolution, SolveError> {
    let osc = radial_oscillator(kinetic, potential, lambda, opts)?;
    let delta = osc.omega * (n as f64 + 0.5);
    let e0 = osc.circular_energy;
    Ok(DosSolution {
        radius: osc.orbit.radius,
        circular_energy: e0,
        effective_mass: osc.effective_mass,
        stiffness: osc.stiffness,
        radial_correction: delta,
        energy: e0 + delta,
        energy_squared: e0 * e0 + 2.0 * e0 * delta,
        residual: osc.orbit.residual,
        roots: osc.orbit.roots,
    })
}

/// Squared-energy variant E0^2 + 2*E0*deltaE for the quantum numbers (D, l, n).
pub fn dos_energy_squared(
    kinetic: &Expression,
    potential: &Expression,
    qn: &QuantumNumbers2B,
    opts: &SolveOptions,
) -> Result<f64, SolveError> {
    Ok(dos_energy(kinetic, potential, qn, opts)?.energy_squared)
}
