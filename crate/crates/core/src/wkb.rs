//! WKB quantization for the degenerate zero-orbital-factor case (D = 2 with
//! vanishing angular momentum), where the circular-orbit system is
//! ill-defined.
//!
//! The classical motion runs from the origin to the turning point
//! r* = V^-1(E - T(0)), and the energy solves
//!
//! ```text
//! integral_0^r*  T^-1(E - V(r)) dr = pi*(n + 1/2)
//! ```
//!
//! with the right-hand side calibrated so the harmonic oscillator comes out
//! exact. The three-body variant quantizes the per-particle budget E/3
//! against the effective potential W with the radial factor (N+1)/sqrt(3).
//!
//! Both T^-1 and V^-1 are obtained numerically by monotone inversion even
//! when closed forms exist, so there is a single code path to validate.

use crate::dos3::{effective_potential, ThreeBodySpec};
use crate::expr::{invert_monotone, ExprError, Expression};
use crate::quad::adaptive_simpson;

use std::f64::consts::PI;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Controls for the WKB quantization solver.
#[derive(Debug, Clone)]
pub struct WkbOptions {
    /// Absolute tolerance of the action quadrature.
    pub quad_abs_tol: f64,
    /// Relative width at which the outer energy bisection stops.
    pub energy_rel_tol: f64,
    /// Cap on outer iterations (bracket doubling plus bisection).
    pub max_outer: usize,
}

impl Default for WkbOptions {
    fn default() -> Self {
        WkbOptions { quad_abs_tol: 1e-10, energy_rel_tol: 1e-12, max_outer: 200 }
    }
}

/// Errors from the WKB solver.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WkbError {
    /// The problem violates the solver's preconditions: T and V must be
    /// strictly increasing with finite values at zero (singular attractive
    /// potentials are rejected rather than regularized).
    #[error("invalid wkb problem: {0}")]
    InvalidProblem(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

/// A solved WKB level.
#[derive(Debug, Clone, Copy)]
pub struct WkbSolution {
    pub energy: f64,
    /// Turning point at the solved energy.
    pub turning_point: f64,
    /// |action integral - target| at the solved energy.
    pub action_residual: f64,
}

/// Two-body WKB energy for radial quantum number `n` (D = 2, l = 0 case).
pub fn wkb2_energy(
    kinetic: &Expression,
    potential: &Expression,
    n: u32,
    opts: &WkbOptions,
) -> Result<f64, WkbError> {
    Ok(wkb2_solve(kinetic, potential, n, opts)?.energy)
}

/// As [`wkb2_energy`], also reporting the turning point and residual.
pub fn wkb2_solve(
    kinetic: &Expression,
    potential: &Expression,
    n: u32,
    opts: &WkbOptions,
) -> Result<WkbSolution, WkbError> {
    let target = PI * (n as f64 + 0.5);
    solve_quantization(kinetic, potential, target, 1.0, opts)
}

/// Three-body WKB energy for total radial quantum number `N` (D = 2, L = 0).
pub fn wkb3_energy(
    spec: &ThreeBodySpec,
    n_total: u32,
    opts: &WkbOptions,
) -> Result<f64, WkbError> {
    Ok(wkb3_solve(spec, n_total, opts)?.energy)
}

/// As [`wkb3_energy`], also reporting the turning point and residual.
pub fn wkb3_solve(
    spec: &ThreeBodySpec,
    n_total: u32,
    opts: &WkbOptions,
) -> Result<WkbSolution, WkbError> {
    let w = effective_potential(spec);
    let target = PI * (n_total as f64 + 1.0) / SQRT_3;
    // The quantization runs on the per-particle budget E/3.
    solve_quantization(&spec.kinetic, &w, target, 3.0, opts)
}

/// Solve integral_0^{V^-1(eps - T(0))} T^-1(eps - V(r)) dr = target for the
/// budget eps, returning the energy `scale * eps`.
fn solve_quantization(
    kinetic: &Expression,
    potential: &Expression,
    target: f64,
    scale: f64,
    opts: &WkbOptions,
) -> Result<WkbSolution, WkbError> {
    let t0 = kinetic
        .eval(0.0)
        .map_err(|e| WkbError::InvalidProblem(format!("kinetic term at p=0: {e}")))?;
    let v0 = potential
        .eval(0.0)
        .map_err(|e| WkbError::InvalidProblem(format!("potential at r=0: {e}")))?;

    let floor = t0 + v0;
    let mut gap = 0.5 * (1.0 + floor.abs());
    let mut hi = floor + gap;
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        if iterations > opts.max_outer {
            return Err(WkbError::NoConvergence(format!(
                "energy bracket not found after {} doublings",
                opts.max_outer
            )));
        }
        if action(kinetic, potential, hi, t0, opts)?.0 > target {
            break;
        }
        gap *= 2.0;
        hi = floor + gap;
    }

    let mut lo = floor;
    while hi - lo > opts.energy_rel_tol * (1.0 + lo.abs().max(hi.abs())) {
        iterations += 1;
        if iterations > opts.max_outer {
            return Err(WkbError::NoConvergence(format!(
                "outer iteration cap {} reached",
                opts.max_outer
            )));
        }
        let mid = 0.5 * (lo + hi);
        if action(kinetic, potential, mid, t0, opts)?.0 < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let eps = 0.5 * (lo + hi);
    let (act, turning_point) = action(kinetic, potential, eps, t0, opts)?;
    Ok(WkbSolution {
        energy: scale * eps,
        turning_point,
        action_residual: (act - target).abs(),
    })
}

/// Action integral at budget `eps`, together with the turning point.
///
/// The substitution r = r*(1 - u^2) removes the square-root derivative
/// blow-up of the integrand at the turning point, so plain adaptive Simpson
/// holds the requested tolerance.
fn action(
    kinetic: &Expression,
    potential: &Expression,
    eps: f64,
    t0: f64,
    opts: &WkbOptions,
) -> Result<(f64, f64), WkbError> {
    let budget = eps - t0;
    let v0 = potential.eval(0.0)?;
    if budget <= v0 {
        return Ok((0.0, 0.0));
    }

    // Turning point: first enclose it by doubling, then invert V.
    let mut r_hi = 1.0;
    let mut steps = 0;
    while potential.eval(r_hi)? < budget {
        r_hi *= 2.0;
        steps += 1;
        if steps > 600 {
            return Err(WkbError::NoConvergence(
                "turning point not reached; potential appears bounded below the energy".into(),
            ));
        }
    }
    let r_star = invert_monotone(potential, budget, 0.0, r_hi)?;

    // One momentum bracket serves every quadrature point: the kinetic budget
    // is largest at r = 0.
    let p_max = {
        let s_max = eps - v0;
        let mut p = 1.0;
        let mut steps = 0;
        while kinetic.eval(p)? < s_max {
            p *= 2.0;
            steps += 1;
            if steps > 600 {
                return Err(WkbError::NoConvergence(
                    "momentum bracket not found; kinetic term appears bounded".into(),
                ));
            }
        }
        p
    };

    let integrand = |u: f64| -> Result<f64, WkbError> {
        if u == 0.0 {
            return Ok(0.0);
        }
        let r = r_star * (1.0 - u * u);
        let s = (eps - potential.eval(r)?).max(t0);
        let p = invert_monotone(kinetic, s, 0.0, p_max)?;
        Ok(p * 2.0 * r_star * u)
    };

    match adaptive_simpson(&integrand, 0.0, 1.0, opts.quad_abs_tol)? {
        Some(value) => Ok((value, r_star)),
        None => Err(WkbError::NoConvergence(
            "quadrature depth exhausted before reaching tolerance".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn opts() -> WkbOptions {
        WkbOptions::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn oscillator_level_is_exact() {
        let t = parse("p^2/2", "p").unwrap();
        let v = parse("r^2/2", "r").unwrap();
        let e = wkb2_energy(&t, &v, 1, &opts()).unwrap();
        assert!(rel(e, 3.0) < 1e-9, "E = {e}");
    }

    #[test]
    fn linear_confinement_ground_state() {
        let t = parse("2*sqrt(p^2)", "p").unwrap();
        let v = parse("r", "r").unwrap();
        let e = wkb2_energy(&t, &v, 0, &opts()).unwrap();
        let expected = (2.0 * PI).sqrt();
        assert!(rel(e, expected) < 1e-9, "E = {e}");
    }

    #[test]
    fn singular_potential_is_rejected() {
        let t = parse("p^2/2", "p").unwrap();
        let v = parse("-1/r", "r").unwrap();
        assert!(matches!(
            wkb2_energy(&t, &v, 0, &opts()),
            Err(WkbError::InvalidProblem(_))
        ));
    }

    #[test]
    fn three_body_oscillator_level() {
        let spec = ThreeBodySpec {
            kinetic: parse("p^2/2", "p").unwrap(),
            one_body: parse("y^2", "y").unwrap(),
            pair: parse("x^2", "x").unwrap(),
        };
        let e = wkb3_energy(&spec, 0, &opts()).unwrap();
        // Exact three-body oscillator at D=2, L=0: sqrt(2(k+3rho))*(2N+2).
        let expected = (2.0 * 4.0_f64).sqrt() * 2.0;
        assert!(rel(e, expected) < 1e-9, "E = {e}");
    }

    #[test]
    fn three_body_linear_levels() {
        let spec = ThreeBodySpec {
            kinetic: parse("sqrt(p^2)", "p").unwrap(),
            one_body: parse("y", "y").unwrap(),
            pair: parse("0", "x").unwrap(),
        };
        for (n, expected_sq) in [(0u32, 6.0 * PI), (2, 18.0 * PI)] {
            let e = wkb3_energy(&spec, n, &opts()).unwrap();
            assert!(rel(e * e, expected_sq) < 1e-9, "N={n}: E^2 = {}", e * e);
        }
    }

    #[test]
    fn tolerance_halving_is_stable() {
        let t = parse("2*sqrt(p^2)", "p").unwrap();
        let v = parse("r", "r").unwrap();
        let coarse = wkb2_energy(&t, &v, 3, &opts()).unwrap();
        let mut tight = opts();
        tight.quad_abs_tol *= 0.5;
        let fine = wkb2_energy(&t, &v, 3, &tight).unwrap();
        assert!(rel(coarse, fine) < 1e-8);
    }
}
