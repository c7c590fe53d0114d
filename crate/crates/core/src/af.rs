//! Auxiliary-field (envelope theory) companion solver.
//!
//! The studied Hamiltonian is replaced by a solvable one built on an
//! auxiliary potential P; the resulting eigenvalue solves the same
//! circular-orbit system as the DOS method, but with the orbital factor
//! replaced by a global quantum number Q and without the radial term.
//! Unlike the DOS estimate, the result can be a variational bound: writing
//! T(x) = h(x^2) and V(x) = g(P(x)), the eigenvalue is an upper (lower)
//! bound when both h and g are concave (convex).

use crate::dos2;
use crate::dos3::{effective_potential, ThreeBodySpec};
use crate::expr::{ExprError, Expression, Node};
use crate::orbit::{SolveError, SolveOptions};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// The two solvable auxiliary potentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxPotential {
    /// P(x) = x^2, Q = 2n + l + D/2.
    Harmonic,
    /// P(x) = -1/x, Q = n + l + (D-1)/2.
    CoulombLike,
}

/// Global quantum number Q of the auxiliary problem.
pub fn af_quantum_number(aux: AuxPotential, l: u32, n: u32, dim: u32) -> f64 {
    debug_assert!(dim >= 2);
    let (l, n, d) = (l as f64, n as f64, dim as f64);
    match aux {
        AuxPotential::Harmonic => 2.0 * n + l + d / 2.0,
        AuxPotential::CoulombLike => n + l + (d - 1.0) / 2.0,
    }
}

/// A solved auxiliary-field level.
#[derive(Debug, Clone)]
pub struct AfSolution {
    pub energy: f64,
    pub radius: f64,
    /// Global quantum number used as the orbital factor.
    pub q: f64,
    pub residual: f64,
    pub roots: Vec<f64>,
}

/// Two-body auxiliary-field eigenvalue.
///
/// Solves Q*T'(Q/r0)/r0^2 = V'(r0) and returns E = T(Q/r0) + V(r0). The
/// estimate depends on (l, n) only through Q, so auxiliary levels with equal
/// Q are exactly degenerate.
pub fn af2_energy(
    kinetic: &Expression,
    potential: &Expression,
    l: u32,
    n: u32,
    dim: u32,
    aux: AuxPotential,
    opts: &SolveOptions,
) -> Result<f64, SolveError> {
    Ok(af2_solve(kinetic, potential, l, n, dim, aux, opts)?.energy)
}

/// As [`af2_energy`], with orbit diagnostics.
pub fn af2_solve(
    kinetic: &Expression,
    potential: &Expression,
    l: u32,
    n: u32,
    dim: u32,
    aux: AuxPotential,
    opts: &SolveOptions,
) -> Result<AfSolution, SolveError> {
    let q = af_quantum_number(aux, l, n, dim);
    let orbit = dos2::solve_orbit(kinetic, potential, q, opts)?;
    let energy = kinetic.eval(q / orbit.radius)? + potential.eval(orbit.radius)?;
    Ok(AfSolution {
        energy,
        radius: orbit.radius,
        q,
        residual: orbit.residual,
        roots: orbit.roots,
    })
}

/// Three-body auxiliary-field eigenvalue (harmonic auxiliary).
///
/// Uses the orbital factor (2N + L + D)/sqrt(3) in the three-body circular
/// system with no radial term: E = 3[T(lambda/x0) + W(x0)].
pub fn af3_energy(
    spec: &ThreeBodySpec,
    l_total: u32,
    n_total: u32,
    dim: u32,
    opts: &SolveOptions,
) -> Result<f64, SolveError> {
    Ok(af3_solve(spec, l_total, n_total, dim, opts)?.energy)
}

/// As [`af3_energy`], with orbit diagnostics.
pub fn af3_solve(
    spec: &ThreeBodySpec,
    l_total: u32,
    n_total: u32,
    dim: u32,
    opts: &SolveOptions,
) -> Result<AfSolution, SolveError> {
    debug_assert!(dim >= 2);
    let q = (2.0 * n_total as f64 + l_total as f64 + dim as f64) / SQRT_3;
    let w = effective_potential(spec);
    let orbit = dos2::solve_orbit(&spec.kinetic, &w, q, opts)?;
    let energy = 3.0 * (spec.kinetic.eval(q / orbit.radius)? + w.eval(orbit.radius)?);
    Ok(AfSolution {
        energy,
        radius: orbit.radius,
        q,
        residual: orbit.residual,
        roots: orbit.roots,
    })
}

/// Variational character of an auxiliary-field eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundClass {
    UpperBound,
    LowerBound,
    Unknown,
}

impl BoundClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundClass::UpperBound => "upper-bound",
            BoundClass::LowerBound => "lower-bound",
            BoundClass::Unknown => "unknown",
        }
    }
}

/// Sampled convexity verdict for one of the comparison functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convexity {
    /// Second derivative vanishes everywhere sampled (linear function);
    /// counts as both concave and convex.
    Flat,
    Concave,
    Convex,
    Mixed,
}

impl Convexity {
    fn concaveish(self) -> bool {
        matches!(self, Convexity::Flat | Convexity::Concave)
    }

    fn convexish(self) -> bool {
        matches!(self, Convexity::Flat | Convexity::Convex)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Convexity::Flat => "flat",
            Convexity::Concave => "concave",
            Convexity::Convex => "convex",
            Convexity::Mixed => "mixed",
        }
    }
}

/// Bound classification plus the convexity verdicts it was based on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub class: BoundClass,
    /// Verdict for h, where T(x) = h(x^2).
    pub kinetic_convexity: Convexity,
    /// Verdict for g, where V(x) = g(P(x)).
    pub potential_convexity: Convexity,
}

/// Sampling controls for [`classify_bound`].
#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Sampling range for the transformed arguments (log-spaced).
    pub range_lo: f64,
    pub range_hi: f64,
    pub points: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { range_lo: 1e-3, range_hi: 1e3, points: 64 }
    }
}

fn convexity_verdict(d2: &[f64]) -> Convexity {
    let scale = d2.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let tol = 1e-12 * scale;
    let concave = d2.iter().all(|&v| v <= tol);
    let convex = d2.iter().all(|&v| v >= -tol);
    match (concave, convex) {
        (true, true) => Convexity::Flat,
        (true, false) => Convexity::Concave,
        (false, true) => Convexity::Convex,
        (false, false) => Convexity::Mixed,
    }
}

fn sample_second_derivatives(
    f: &Expression,
    opts: &ClassifyOptions,
    negate_argument: bool,
) -> Result<Vec<f64>, ExprError> {
    let n = opts.points.max(2);
    let ratio = (opts.range_hi / opts.range_lo).powf(1.0 / (n - 1) as f64);
    let mut out = Vec::with_capacity(n);
    let mut z = opts.range_lo;
    for _ in 0..n {
        let arg = if negate_argument { -z } else { z };
        out.push(f.eval_jet2(arg)?.d2);
        z *= ratio;
    }
    Ok(out)
}

/// Classify the variational character of the auxiliary-field eigenvalue.
///
/// Builds h(y) = T(sqrt(y)) and g(z) = V(P^-1(z)) by composition and samples
/// their second derivatives on a log-spaced grid. Flat verdicts satisfy both
/// conditions, so an exactly matching auxiliary family (both flat) reports
/// an upper bound with the flatness visible in the report.
///
/// The verdict is range-limited: sampling cannot prove global convexity.
pub fn classify_bound(
    kinetic: &Expression,
    potential: &Expression,
    aux: AuxPotential,
    opts: &ClassifyOptions,
) -> Result<BoundReport, ExprError> {
    let var = "z";
    // h(y) = T(sqrt(y)).
    let sqrt_arg = Expression::from_node(Node::Sqrt(Box::new(Node::Var)), var);
    let h = kinetic.compose(&sqrt_arg);
    let h_d2 = sample_second_derivatives(&h, opts, false)?;

    // g(z) = V(P^-1(z)): sqrt(z) for the harmonic auxiliary on z > 0,
    // -1/z for the Coulomb-like one on z < 0.
    let (g, negate) = match aux {
        AuxPotential::Harmonic => (potential.compose(&sqrt_arg), false),
        AuxPotential::CoulombLike => {
            let inv = Node::Neg(Box::new(Node::Div(
                Box::new(Node::Const(1.0)),
                Box::new(Node::Var),
            )));
            (potential.compose(&Expression::from_node(inv, var)), true)
        }
    };
    let g_d2 = sample_second_derivatives(&g, opts, negate)?;

    let kinetic_convexity = convexity_verdict(&h_d2);
    let potential_convexity = convexity_verdict(&g_d2);
    let class = if kinetic_convexity.concaveish() && potential_convexity.concaveish() {
        BoundClass::UpperBound
    } else if kinetic_convexity.convexish() && potential_convexity.convexish() {
        BoundClass::LowerBound
    } else {
        BoundClass::Unknown
    };
    Ok(BoundReport { class, kinetic_convexity, potential_convexity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn quantum_number_values() {
        assert_eq!(af_quantum_number(AuxPotential::Harmonic, 0, 0, 3), 1.5);
        assert_eq!(af_quantum_number(AuxPotential::CoulombLike, 1, 0, 3), 2.0);
        assert_eq!(af_quantum_number(AuxPotential::Harmonic, 2, 1, 2), 5.0);
    }

    #[test]
    fn linear_confinement_upper_bound_values() {
        let t = parse("2*sqrt(p^2)", "p").unwrap();
        let v = parse("r", "r").unwrap();
        let e = af2_energy(&t, &v, 0, 0, 3, AuxPotential::Harmonic, &opts()).unwrap();
        assert!(rel(e * e, 12.0) < 1e-12);
        let e = af2_energy(&t, &v, 3, 3, 3, AuxPotential::Harmonic, &opts()).unwrap();
        assert!(rel(e * e, 84.0) < 1e-12);
    }

    #[test]
    fn coulomb_auxiliary_is_exact_for_coulomb() {
        let t = parse("p^2/2", "p").unwrap();
        let v = parse("-1/r", "r").unwrap();
        let e = af2_energy(&t, &v, 1, 0, 3, AuxPotential::CoulombLike, &opts()).unwrap();
        assert!(rel(e, -0.125) < 1e-12);
    }

    #[test]
    fn three_body_energies_and_degeneracy() {
        let spec = ThreeBodySpec {
            kinetic: parse("sqrt(p^2)", "p").unwrap(),
            one_body: parse("y", "y").unwrap(),
            pair: parse("0", "x").unwrap(),
        };
        let e = af3_energy(&spec, 0, 0, 3, &opts()).unwrap();
        assert!(rel(e, 6.0) < 1e-12);
        let e = af3_energy(&spec, 2, 0, 3, &opts()).unwrap();
        assert!(rel(e * e, 60.0) < 1e-12);
        // Q = L + 2N degeneracy.
        let a = af3_energy(&spec, 2, 0, 3, &opts()).unwrap();
        let b = af3_energy(&spec, 0, 1, 3, &opts()).unwrap();
        assert!((a - b).abs() <= 1e-12 * a.abs());
    }

    #[test]
    fn classification_examples() {
        let copts = ClassifyOptions::default();

        let t = parse("2*sqrt(p^2)", "p").unwrap();
        let v = parse("r", "r").unwrap();
        let report = classify_bound(&t, &v, AuxPotential::Harmonic, &copts).unwrap();
        assert_eq!(report.class, BoundClass::UpperBound);
        assert_eq!(report.kinetic_convexity, Convexity::Concave);
        assert_eq!(report.potential_convexity, Convexity::Concave);

        let t = parse("p^2/2", "p").unwrap();
        let v = parse("-1/r", "r").unwrap();
        let report = classify_bound(&t, &v, AuxPotential::CoulombLike, &copts).unwrap();
        assert_eq!(report.class, BoundClass::UpperBound);
        assert_eq!(report.kinetic_convexity, Convexity::Flat);
        assert_eq!(report.potential_convexity, Convexity::Flat);

        let t = parse("p^2/2", "p").unwrap();
        let v = parse("r^2/2", "r").unwrap();
        let report = classify_bound(&t, &v, AuxPotential::Harmonic, &copts).unwrap();
        assert_eq!(report.class, BoundClass::UpperBound);
        assert_eq!(report.kinetic_convexity, Convexity::Flat);
        assert_eq!(report.potential_convexity, Convexity::Flat);
    }

    #[test]
    fn mixed_convexity_is_unknown() {
        let t = parse("p^2/2", "p").unwrap();
        // V with g(z) = V(sqrt(z)) changing convexity over the range.
        let v = parse("r^2 - exp(-r^2)", "r").unwrap();
        let report = classify_bound(&t, &v, AuxPotential::Harmonic, &ClassifyOptions::default())
            .unwrap();
        assert_eq!(report.potential_convexity, Convexity::Mixed);
        assert_eq!(report.class, BoundClass::Unknown);
    }
}
