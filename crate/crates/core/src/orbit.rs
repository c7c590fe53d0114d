//! Circular-orbit radius search shared by the DOS and AF solvers.
//!
//! The physical radius balances the centrifugal pull of the quantized
//! orbital motion against the potential gradient. The residual of that
//! balance is scanned for sign changes on a logarithmic grid, every
//! bracketed root is refined, and the root with the lowest circular energy
//! is kept as the physical orbit.

use crate::expr::{ExprError, Expression};

/// Controls for the radius search.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Lower end of the radius scan.
    pub bracket_lo: f64,
    /// Upper end of the radius scan.
    pub bracket_hi: f64,
    /// Scan resolution of the sign-change search.
    pub points_per_decade: u32,
    /// Relative width at which interval refinement stops.
    pub refine_rel_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            bracket_lo: 1e-8,
            bracket_hi: 1e8,
            points_per_decade: 64,
            refine_rel_tol: 1e-14,
        }
    }
}

/// Errors from the circular-orbit solvers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("no circular orbit: no sign change of the stationarity residual in [{lo:e}, {hi:e}]")]
    NoOrbit { lo: f64, hi: f64 },
    #[error("unstable orbit at r0={radius}: effective stiffness {stiffness} is not positive, no harmonic radial motion")]
    UnstableOrbit { radius: f64, stiffness: f64 },
    #[error("degenerate orbital factor (lambda = 0); solve this case with the wkb module")]
    DegenerateLambda,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// A located circular orbit with search diagnostics.
#[derive(Debug, Clone)]
pub struct Orbit {
    /// Radius of the energy-minimizing stationary orbit.
    pub radius: f64,
    /// Stationarity residual at `radius`.
    pub residual: f64,
    /// Every stationary radius bracketed by the scan, sorted ascending.
    pub roots: Vec<f64>,
}

/// Stationarity residual lambda*T'(lambda/r)/r^2 - V'(r).
fn residual(kinetic: &Expression, potential: &Expression, lambda: f64, r: f64) -> Option<f64> {
    let t = kinetic.eval_jet2(lambda / r).ok()?;
    let v = potential.eval_jet2(r).ok()?;
    let res = lambda * t.d1 / (r * r) - v.d1;
    res.is_finite().then_some(res)
}

/// Derivative of the residual in r, used to polish refined roots.
fn residual_slope(kinetic: &Expression, potential: &Expression, lambda: f64, r: f64) -> Option<f64> {
    let t = kinetic.eval_jet2(lambda / r).ok()?;
    let v = potential.eval_jet2(r).ok()?;
    let s = -lambda * lambda * t.d2 / (r * r * r * r) - 2.0 * lambda * t.d1 / (r * r * r) - v.d2;
    s.is_finite().then_some(s)
}

fn circular_energy(
    kinetic: &Expression,
    potential: &Expression,
    lambda: f64,
    r: f64,
) -> Option<f64> {
    let t = kinetic.eval(lambda / r).ok()?;
    let v = potential.eval(r).ok()?;
    let e = t + v;
    e.is_finite().then_some(e)
}

fn refine(
    kinetic: &Expression,
    potential: &Expression,
    lambda: f64,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    opts: &SolveOptions,
) -> Option<f64> {
    while hi - lo > opts.refine_rel_tol * hi.abs().max(lo.abs()) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match residual(kinetic, potential, lambda, mid) {
            Some(f_mid) => {
                if f_mid == 0.0 {
                    return Some(mid);
                }
                if (f_mid < 0.0) == (f_lo < 0.0) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            // A domain hole inside the bracket; shrink toward the known side.
            None => hi = mid,
        }
    }
    let mut r = 0.5 * (lo + hi);
    // A couple of Newton steps squeeze the residual to machine level.
    for _ in 0..3 {
        let f = residual(kinetic, potential, lambda, r)?;
        if f == 0.0 {
            break;
        }
        let slope = match residual_slope(kinetic, potential, lambda, r) {
            Some(s) if s != 0.0 => s,
            _ => break,
        };
        let next = r - f / slope;
        if !next.is_finite() || next <= lo || next >= hi {
            break;
        }
        r = next;
    }
    Some(r)
}

/// Find the circular-orbit radius for the given orbital factor.
///
/// Scans `[bracket_lo, bracket_hi]` logarithmically for sign changes of the
/// stationarity residual, refines each to `refine_rel_tol`, and selects the
/// root minimizing the circular energy T(lambda/r) + V(r).
pub(crate) fn find_orbit(
    kinetic: &Expression,
    potential: &Expression,
    lambda: f64,
    opts: &SolveOptions,
) -> Result<Orbit, SolveError> {
    if !(lambda > 0.0) {
        return Err(SolveError::DegenerateLambda);
    }
    if !(opts.bracket_lo > 0.0 && opts.bracket_hi > opts.bracket_lo) {
        return Err(SolveError::InvalidInput(format!(
            "bracket [{}, {}] must satisfy 0 < lo < hi",
            opts.bracket_lo, opts.bracket_hi
        )));
    }

    let decades = (opts.bracket_hi / opts.bracket_lo).log10();
    let steps = (decades * opts.points_per_decade.max(1) as f64).ceil() as usize;
    let ratio = 10f64.powf(decades / steps as f64);

    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    let mut r = opts.bracket_lo;
    for i in 0..=steps {
        if i == steps {
            r = opts.bracket_hi;
        }
        if let Some(f) = residual(kinetic, potential, lambda, r) {
            if f == 0.0 {
                roots.push(r);
            } else if let Some((r_prev, f_prev)) = prev {
                if (f < 0.0) != (f_prev < 0.0) {
                    if let Some(root) = refine(kinetic, potential, lambda, r_prev, r, f_prev, opts)
                    {
                        roots.push(root);
                    }
                }
            }
            prev = Some((r, f));
        } else {
            prev = None;
        }
        r *= ratio;
    }

    // Discard spurious roots (sign flips across poles keep a large residual)
    // and deduplicate grid points that coincide with refined roots.
    roots.retain(|&root| match residual(kinetic, potential, lambda, root) {
        Some(f) => {
            let scale = potential
                .eval_jet2(root)
                .map(|v| v.d1.abs().max(1.0))
                .unwrap_or(1.0);
            f.abs() <= 1e-6 * scale
        }
        None => false,
    });
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-10 * b.abs());

    let mut best: Option<(f64, f64)> = None;
    for &root in &roots {
        if let Some(e) = circular_energy(kinetic, potential, lambda, root) {
            if best.map_or(true, |(_, e_best)| e < e_best) {
                best = Some((root, e));
            }
        }
    }
    let (radius, _) = best.ok_or(SolveError::NoOrbit {
        lo: opts.bracket_lo,
        hi: opts.bracket_hi,
    })?;
    let res = residual(kinetic, potential, lambda, radius).unwrap_or(f64::NAN);
    Ok(Orbit { radius, residual: res, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn keeps_all_roots_and_selects_energy_minimum() {
        // A potential with a wiggle can host several stationary radii; the
        // scan must report them all and keep the energy minimum.
        let t = parse("p^2/2", "p").unwrap();
        let v = parse("r^2/2 - 2*exp(-(r-3)^2)", "r").unwrap();
        let orbit = find_orbit(&t, &v, 2.0, &SolveOptions::default()).unwrap();
        assert!(orbit.roots.len() >= 2, "expected several roots, got {:?}", orbit.roots);
        let e_best = t.eval(2.0 / orbit.radius).unwrap() + v.eval(orbit.radius).unwrap();
        for &root in &orbit.roots {
            let e = t.eval(2.0 / root).unwrap() + v.eval(root).unwrap();
            assert!(e_best <= e + 1e-12);
        }
    }

    #[test]
    fn no_orbit_for_repulsive_potential() {
        let t = parse("p^2/2", "p").unwrap();
        let v = parse("1/r", "r").unwrap();
        assert!(matches!(
            find_orbit(&t, &v, 1.5, &SolveOptions::default()),
            Err(SolveError::NoOrbit { .. })
        ));
    }

    #[test]
    fn zero_lambda_is_degenerate() {
        let t = parse("p^2/2", "p").unwrap();
        let v = parse("r^2/2", "r").unwrap();
        assert!(matches!(
            find_orbit(&t, &v, 0.0, &SolveOptions::default()),
            Err(SolveError::DegenerateLambda)
        ));
    }
}
