//! Three-identical-particle dominantly orbital state solver.
//!
//! The particles are constrained to a circular motion at the apexes of an
//! equilateral triangle, which reduces the Hamiltonian to 3[T(q) + W(x)]
//! with the effective potential W(x) = U(x/sqrt(3)) + V(x), where x is the
//! pair separation. The orbital and radial quantum factors carried by the
//! two internal coordinates are (L + D - 2)/sqrt(3) and (N + 1)/sqrt(3) with
//! L = l1 + l2 and N = n1 + n2.

use crate::dos2::{self, DosSolution};
use crate::expr::{Expression, Node};
use crate::orbit::{SolveError, SolveOptions};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Three-body quantum numbers: dimension D >= 2, total orbital L, total radial N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers3B {
    pub dim: u32,
    /// Total orbital quantum number L = l1 + l2.
    pub l_total: u32,
    /// Total radial quantum number N = n1 + n2.
    pub n_total: u32,
}

impl QuantumNumbers3B {
    pub fn new(dim: u32, l_total: u32, n_total: u32) -> Result<Self, SolveError> {
        if dim < 2 {
            return Err(SolveError::InvalidInput(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        Ok(QuantumNumbers3B { dim, l_total, n_total })
    }

    /// Orbital factor (L + D - 2)/sqrt(3); zero only for D=2, L=0.
    pub fn lambda(&self) -> f64 {
        (self.l_total as f64 + self.dim as f64 - 2.0) / SQRT_3
    }

    /// Radial factor (N + 1)/sqrt(3) taking the place of n + 1/2.
    pub fn radial_factor(&self) -> f64 {
        (self.n_total as f64 + 1.0) / SQRT_3
    }
}

/// Three identical particles: one-body kinetic term, one-body potential of
/// the distance to the center of mass, and pairwise potential of the
/// interparticle distance.
#[derive(Debug, Clone)]
pub struct ThreeBodySpec {
    pub kinetic: Expression,
    pub one_body: Expression,
    pub pair: Expression,
}

/// Effective pair-distance potential W(x) = U(x/sqrt(3)) + V(x).
///
/// Built by composition, so W carries exact chain-rule derivatives
/// (W'(x) = U'(x/sqrt(3))/sqrt(3) + V'(x), and so on).
pub fn effective_potential(spec: &ThreeBodySpec) -> Expression {
    let scaled_var = Node::Div(Box::new(Node::Var), Box::new(Node::Const(SQRT_3)));
    let scaled = Expression::from_node(scaled_var, spec.pair.var_name());
    let one_body_part = spec.one_body.compose(&scaled);
    let root = Node::Add(
        Box::new(one_body_part.root().clone()),
        Box::new(spec.pair.root().clone()),
    );
    Expression::from_node(root, spec.pair.var_name())
}

/// Full three-body solution for the quantum numbers (D, L, N).
///
/// Energies in the returned solution are totals for the three-particle
/// system; `effective_mass` and `stiffness` describe the internal radial
/// oscillator of the reduced one-variable problem.
pub fn dos3_energy(
    spec: &ThreeBodySpec,
    qn: &QuantumNumbers3B,
    opts: &SolveOptions,
) -> Result<DosSolution, SolveError> {
    let w = effective_potential(spec);
    let osc = dos2::radial_oscillator(&spec.kinetic, &w, qn.lambda(), opts)?;
    let delta = 3.0 * osc.omega * qn.radial_factor();
    let e0 = 3.0 * osc.circular_energy;
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

/// Squared-energy variant E0^2 + 2*E0*deltaE for the three-body system.
pub fn dos3_energy_squared(
    spec: &ThreeBodySpec,
    qn: &QuantumNumbers3B,
    opts: &SolveOptions,
) -> Result<f64, SolveError> {
    Ok(dos3_energy(spec, qn, opts)?.energy_squared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn spec(t: &str, u: &str, v: &str) -> ThreeBodySpec {
        ThreeBodySpec {
            kinetic: parse(t, "p").unwrap(),
            one_body: parse(u, "y").unwrap(),
            pair: parse(v, "x").unwrap(),
        }
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn effective_potential_linear_case() {
        // U = a*y, V = b*x gives W = c*x/sqrt(3) with c = a + sqrt(3)*b.
        let s = spec("p", "0.3*y", "0.4*x");
        let w = effective_potential(&s);
        let c = 0.3 + 3f64.sqrt() * 0.4;
        for x in [0.5, 1.0, 7.0] {
            let j = w.eval_jet2(x).unwrap();
            assert!(rel(j.value, c * x / 3f64.sqrt()) < 1e-14);
            assert!(rel(j.d1, c / 3f64.sqrt()) < 1e-14);
            assert!(j.d2.abs() < 1e-14);
        }
    }

    #[test]
    fn effective_potential_harmonic_case() {
        // U = k*y^2, V = rho*x^2 gives W = (k/3 + rho)*x^2.
        let s = spec("p^2/2", "2*y^2", "0.5*x^2");
        let w = effective_potential(&s);
        let coeff: f64 = 2.0 / 3.0 + 0.5;
        for x in [0.3, 1.0, 4.0] {
            let j = w.eval_jet2(x).unwrap();
            assert!(rel(j.value, coeff * x * x) < 1e-14);
            assert!(rel(j.d1, 2.0 * coeff * x) < 1e-14);
            assert!(rel(j.d2, 2.0 * coeff) < 1e-14);
        }
    }

    #[test]
    fn effective_potential_identity_case() {
        let s = spec("p^2/2", "0", "x^2");
        let w = effective_potential(&s);
        let j = w.eval_jet2(2.0).unwrap();
        assert_eq!((j.value, j.d1, j.d2), (4.0, 4.0, 2.0));
    }

    #[test]
    fn three_body_oscillator_is_exact() {
        // T = p^2/2, U = k*y^2, V = rho*x^2: E = sqrt(2(k+3rho))(2N+L+D).
        let s = spec("p^2/2", "y^2", "x^2");
        let qn = QuantumNumbers3B::new(3, 2, 1).unwrap();
        let sol = dos3_energy(&s, &qn, &SolveOptions::default()).unwrap();
        let expected = (2.0_f64 * (1.0 + 3.0)).sqrt() * 7.0;
        assert!(rel(sol.energy, expected) < 1e-12);
    }

    #[test]
    fn baryon_squared_energy() {
        // T = p, U = a*y, V = 0 at a = 0.2: E^2 = 12*0.2*(1 + sqrt(2)).
        let s = spec("sqrt(p^2)", "0.2*y", "0");
        let qn = QuantumNumbers3B::new(3, 0, 0).unwrap();
        let sq = dos3_energy_squared(&s, &qn, &SolveOptions::default()).unwrap();
        let expected = 12.0 * 0.2 * (1.0 + 2f64.sqrt());
        assert!(rel(sq, expected) < 1e-12);
        assert!((sq.sqrt() - 2.4071).abs() < 1e-4);
    }

    #[test]
    fn squared_energy_closed_form_cells() {
        let s = spec("sqrt(p^2)", "y", "0");
        let opts = SolveOptions::default();
        let cases = [
            ((3, 2, 0), 12.0 * (2.0 + 1.0 + 2f64.sqrt())),
            ((3, 0, 1), 12.0 * (1.0 + 2.0 * 2f64.sqrt())),
            ((2, 1, 0), 12.0 * (1.0 + 2f64.sqrt())),
        ];
        for ((d, l, n), expected) in cases {
            let qn = QuantumNumbers3B::new(d, l, n).unwrap();
            let sq = dos3_energy_squared(&s, &qn, &opts).unwrap();
            assert!(rel(sq, expected) < 1e-12, "D={d} L={l} N={n}");
        }
    }

    #[test]
    fn minimal_length_first_order() {
        // T = p^2/2 + beta*p^4, V = x^2: first-order shift in beta matches
        // 2k(L+D-2)(6N+L+D+4) with the radius following the expansion
        // lambda^(1/2)(2km)^(-1/4) + lambda^(3/2)(2km)^(1/4)*beta.
        let beta = 1e-4;
        let s = spec(&format!("p^2/2 + {beta}*p^4"), "0", "x^2");
        let qn = QuantumNumbers3B::new(3, 0, 0).unwrap();
        let sol = dos3_energy(&s, &qn, &SolveOptions::default()).unwrap();
        let e_first_order = 6f64.sqrt() * 3.0 + 2.0 * 1.0 * 7.0 * beta;
        assert!((sol.energy - e_first_order).abs() < 60.0 * beta * beta);

        let lambda = qn.lambda();
        let x0_first_order =
            lambda.sqrt() * 2f64.powf(-0.25) + lambda.powf(1.5) * 2f64.powf(0.25) * beta;
        assert!((sol.radius - x0_first_order).abs() < 10.0 * beta * beta);
    }

    #[test]
    fn degenerate_case_is_rejected() {
        let s = spec("p^2/2", "0", "x^2");
        let qn = QuantumNumbers3B::new(2, 0, 0).unwrap();
        assert!(matches!(
            dos3_energy(&s, &qn, &SolveOptions::default()),
            Err(SolveError::DegenerateLambda)
        ));
    }
}
