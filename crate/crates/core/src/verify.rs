//! Cross-validation of the numeric pipeline against the closed-form catalog.
//!
//! Each family sweeps a parameter grid, runs the generic solvers, and
//! compares against the independent catalog formula or published value.
//! Tolerances are passed in by the caller so test suites can pin their own.

use crate::af::{self, AuxPotential};
use crate::catalog;
use crate::dos2::{self, QuantumNumbers2B, SolveOptions};
use crate::dos3::{self, QuantumNumbers3B, ThreeBodySpec};
use crate::expr::parse;
use crate::wkb::{self, WkbOptions};

/// Outcome of one validation family.
#[derive(Debug, Clone)]
pub struct FamilyOutcome {
    pub family: &'static str,
    pub cells: usize,
    /// Worst error across the grid; relative or absolute depending on the
    /// family (absolute only for the published three-decimal benchmarks).
    pub max_err: f64,
    pub tol: f64,
    /// First hard failure (solver error or broken invariant), if any.
    pub failure: Option<String>,
}

impl FamilyOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.max_err <= self.tol
    }
}

struct Family {
    outcome: FamilyOutcome,
}

impl Family {
    fn new(family: &'static str, tol: f64) -> Self {
        Family {
            outcome: FamilyOutcome { family, cells: 0, max_err: 0.0, tol, failure: None },
        }
    }

    /// Record a comparison. The error is |actual - expected| divided by
    /// max(|expected|, scale); pass scale = 0 for a plain relative error and
    /// the natural magnitude of the quantity when `expected` may vanish.
    fn record<E: std::fmt::Display>(
        &mut self,
        label: &str,
        actual: Result<f64, E>,
        expected: f64,
        scale: f64,
    ) {
        self.outcome.cells += 1;
        match actual {
            Ok(value) => {
                let denom = expected.abs().max(scale).max(f64::MIN_POSITIVE);
                let err = (value - expected).abs() / denom;
                if err > self.outcome.max_err {
                    self.outcome.max_err = err;
                    if err > self.outcome.tol && self.outcome.failure.is_none() {
                        self.outcome.failure = Some(format!(
                            "{label}: got {value}, expected {expected} (err {err:.3e})"
                        ));
                    }
                }
            }
            Err(e) => {
                if self.outcome.failure.is_none() {
                    self.outcome.failure = Some(format!("{label}: {e}"));
                }
                self.outcome.max_err = f64::INFINITY;
            }
        }
    }

    fn check(&mut self, label: &str, ok: bool) {
        self.outcome.cells += 1;
        if !ok && self.outcome.failure.is_none() {
            self.outcome.failure = Some(label.to_string());
        }
    }

    fn fail(&mut self, label: &str, message: impl std::fmt::Display) {
        if self.outcome.failure.is_none() {
            self.outcome.failure = Some(format!("{label}: {message}"));
        }
        self.outcome.max_err = f64::INFINITY;
    }

    fn finish(self) -> FamilyOutcome {
        self.outcome
    }
}

const MK_SETTINGS: [(f64, f64); 3] = [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5)];

/// Two-body oscillator exactness: E = sqrt(k/m)*(2n + l + D/2).
pub fn two_body_oscillator(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("two-body-oscillator", tol);
    let opts = SolveOptions::default();
    for (m, k) in MK_SETTINGS {
        let t = parse(&format!("p^2/(2*{m})"), "p").unwrap();
        let v = parse(&format!("{k}*r^2/2"), "r").unwrap();
        for dim in [2u32, 3, 4, 5] {
            for l in 1..=10 {
                for n in 0..=5 {
                    let qn = QuantumNumbers2B::new(dim, l, n).unwrap();
                    let actual = dos2::dos_energy(&t, &v, &qn, &opts).map(|s| s.energy);
                    let expected = catalog::ho2_exact(m, k, dim, l, n);
                    fam.record(&format!("m={m} k={k} D={dim} l={l} n={n}"), actual, expected, 0.0);
                }
            }
        }
    }
    fam.finish()
}

/// Two-body Coulomb: E matches the 1/lambda expansion closed form.
pub fn two_body_coulomb(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("two-body-coulomb", tol);
    let opts = SolveOptions::default();
    for (m, alpha) in MK_SETTINGS {
        let t = parse(&format!("p^2/(2*{m})"), "p").unwrap();
        let v = parse(&format!("-{alpha}/r"), "r").unwrap();
        for dim in [2u32, 3, 4, 5] {
            for l in 1..=10 {
                for n in 0..=5 {
                    let qn = QuantumNumbers2B::new(dim, l, n).unwrap();
                    let actual = dos2::dos_energy(&t, &v, &qn, &opts).map(|s| s.energy);
                    let expected = catalog::coulomb_dos(m, alpha, dim, l, n);
                    // The two terms can cancel exactly (lambda = 2n + 1), so
                    // scale by their magnitude instead of the tiny sum.
                    let lam = dos2::lambda_of(l, dim);
                    let scale = m * alpha * alpha / (lam * lam);
                    fam.record(
                        &format!("m={m} alpha={alpha} D={dim} l={l} n={n}"),
                        actual,
                        expected,
                        scale,
                    );
                }
            }
        }
    }
    fam.finish()
}

/// |E_DOS - E_exact| for the Coulomb problem shrinks as l grows at fixed n.
pub fn coulomb_monotone_convergence() -> FamilyOutcome {
    let mut fam = Family::new("coulomb-monotone-convergence", 0.0);
    let opts = SolveOptions::default();
    let t = parse("p^2/2", "p").unwrap();
    let v = parse("-1/r", "r").unwrap();
    for dim in [2u32, 3, 4, 5] {
        for n in 0..=2 {
            let mut prev: Option<f64> = None;
            for l in 1..=10 {
                let qn = QuantumNumbers2B::new(dim, l, n).unwrap();
                let label = format!("D={dim} l={l} n={n}");
                match dos2::dos_energy(&t, &v, &qn, &opts) {
                    Ok(sol) => {
                        let gap = (sol.energy - catalog::coulomb_exact(1.0, 1.0, dim, l, n)).abs();
                        if let Some(prev_gap) = prev {
                            fam.check(
                                &format!("{label}: error {gap:.3e} not below {prev_gap:.3e}"),
                                gap < prev_gap,
                            );
                        }
                        prev = Some(gap);
                    }
                    Err(e) => fam.fail(&label, e),
                }
            }
        }
    }
    fam.finish()
}

/// Squared-energy closed form of the linear two-body system.
pub fn meson_closed_form(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("meson-closed-form", tol);
    let opts = SolveOptions::default();
    let t = parse("2*sqrt(p^2)", "p").unwrap();
    for a in [0.2, 1.0, 3.0] {
        let v = parse(&format!("{a}*r"), "r").unwrap();
        for dim in [2u32, 3, 4] {
            for l in 0..=10 {
                if dim == 2 && l == 0 {
                    continue;
                }
                for n in 0..=5 {
                    let qn = QuantumNumbers2B::new(dim, l, n).unwrap();
                    let actual = dos2::dos_energy_squared(&t, &v, &qn, &opts);
                    let expected = catalog::meson_sq(a, dim, l, n);
                    fam.record(&format!("a={a} D={dim} l={l} n={n}"), actual, expected, 0.0);
                }
            }
        }
    }
    fam.finish()
}

fn oscillator3(k: f64, rho: f64, m: f64) -> ThreeBodySpec {
    ThreeBodySpec {
        kinetic: parse(&format!("p^2/(2*{m})"), "p").unwrap(),
        one_body: parse(&format!("{k}*y^2"), "y").unwrap(),
        pair: parse(&format!("{rho}*x^2"), "x").unwrap(),
    }
}

fn linear3(a: f64, b: f64) -> ThreeBodySpec {
    ThreeBodySpec {
        kinetic: parse("sqrt(p^2)", "p").unwrap(),
        one_body: parse(&format!("{a}*y"), "y").unwrap(),
        pair: parse(&format!("{b}*x"), "x").unwrap(),
    }
}

/// Three-body oscillator exactness: E = sqrt(2(k+3rho)/m)*(2N + L + D).
pub fn three_body_oscillator(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("three-body-oscillator", tol);
    let opts = SolveOptions::default();
    for (k, rho) in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
        for m in [0.5, 1.0, 2.0] {
            let spec = oscillator3(k, rho, m);
            for dim in [2u32, 3, 4] {
                for l_total in 1..=10 {
                    for n_total in 0..=5 {
                        let qn = QuantumNumbers3B::new(dim, l_total, n_total).unwrap();
                        let actual = dos3::dos3_energy(&spec, &qn, &opts).map(|s| s.energy);
                        let expected =
                            catalog::ho3_exact(m, k, rho, dim, l_total, 0, n_total, 0);
                        fam.record(
                            &format!("k={k} rho={rho} m={m} D={dim} L={l_total} N={n_total}"),
                            actual,
                            expected,
                            0.0,
                        );
                    }
                }
            }
        }
    }
    fam.finish()
}

/// Squared-energy closed form of the linear three-body system.
pub fn baryon_closed_form(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("baryon-closed-form", tol);
    let opts = SolveOptions::default();
    for (a, b) in [(1.0, 0.0), (0.0, 1.0), (0.2, 0.1)] {
        let spec = linear3(a, b);
        for dim in [2u32, 3, 4] {
            for l_total in 0..=10 {
                if dim == 2 && l_total == 0 {
                    continue;
                }
                for n_total in 0..=5 {
                    let qn = QuantumNumbers3B::new(dim, l_total, n_total).unwrap();
                    let actual = dos3::dos3_energy_squared(&spec, &qn, &opts);
                    let expected = catalog::baryon_sq(a, b, dim, l_total, n_total);
                    fam.record(
                        &format!("a={a} b={b} D={dim} L={l_total} N={n_total}"),
                        actual,
                        expected,
                        0.0,
                    );
                }
            }
        }
    }
    fam.finish()
}

/// WKB oscillator calibration: exact levels for all m, k settings.
pub fn wkb_oscillator(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("wkb-oscillator", tol);
    let opts = WkbOptions::default();
    for m in [0.5, 1.0, 2.0] {
        for k in [0.5, 1.0, 2.0] {
            let t = parse(&format!("p^2/(2*{m})"), "p").unwrap();
            let v = parse(&format!("{k}*r^2/2"), "r").unwrap();
            for n in 0..=8 {
                let actual = wkb::wkb2_energy(&t, &v, n, &opts);
                // Exact D=2, l=0 oscillator level: sqrt(k/m)*(2n + 1).
                let expected = catalog::ho2_exact(m, k, 2, 0, n);
                fam.record(&format!("m={m} k={k} n={n}"), actual, expected, 0.0);
            }
        }
    }
    fam.finish()
}

/// WKB closed form of the linear two-body system: E^2 = 4*pi*a*(n + 1/2).
pub fn wkb_meson(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("wkb-meson", tol);
    let opts = WkbOptions::default();
    let t = parse("2*sqrt(p^2)", "p").unwrap();
    let v = parse("r", "r").unwrap();
    for n in 0..=8 {
        let actual = wkb::wkb2_energy(&t, &v, n, &opts).map(|e| e * e);
        let expected = catalog::meson_wkb_sq(1.0, n);
        fam.record(&format!("n={n}"), actual, expected, 0.0);
    }
    fam.finish()
}

/// WKB closed form of the linear three-body system: E^2 = 6*pi*c*(N + 1).
pub fn wkb_baryon(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("wkb-baryon", tol);
    let opts = WkbOptions::default();
    let spec = linear3(1.0, 0.0);
    for n_total in 0..=8 {
        let actual = wkb::wkb3_energy(&spec, n_total, &opts).map(|e| e * e);
        let expected = catalog::baryon_wkb_sq(1.0, 0.0, n_total);
        fam.record(&format!("N={n_total}"), actual, expected, 0.0);
    }
    fam.finish()
}

/// Three-body WKB against the exact oscillator at D = 2, L = 0.
pub fn wkb_three_body_oscillator(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("wkb-three-body-oscillator", tol);
    let opts = WkbOptions::default();
    for (k, rho, m) in [(1.0, 0.0, 1.0), (0.0, 1.0, 1.0), (1.0, 1.0, 0.5)] {
        let spec = oscillator3(k, rho, m);
        for n_total in 0..=8 {
            let actual = wkb::wkb3_energy(&spec, n_total, &opts);
            let expected = catalog::ho3_exact(m, k, rho, 2, 0, 0, n_total, 0);
            fam.record(&format!("k={k} rho={rho} m={m} N={n_total}"), actual, expected, 0.0);
        }
    }
    fam.finish()
}

/// Halving the quadrature tolerance moves WKB energies by < tol relative.
pub fn wkb_quadrature_stability(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("wkb-quadrature-stability", tol);
    let coarse = WkbOptions::default();
    let tight = WkbOptions { quad_abs_tol: coarse.quad_abs_tol / 2.0, ..coarse.clone() };
    let cases: [(&str, &str, u32); 2] = [("2*sqrt(p^2)", "r", 3), ("p^2/2", "r^2/2", 5)];
    for (ts, vs, n) in cases {
        let t = parse(ts, "p").unwrap();
        let v = parse(vs, "r").unwrap();
        let label = format!("T={ts} V={vs} n={n}");
        match wkb::wkb2_energy(&t, &v, n, &coarse) {
            Ok(e1) => fam.record(&label, wkb::wkb2_energy(&t, &v, n, &tight), e1, 0.0),
            Err(e) => fam.fail(&label, e),
        }
    }
    fam.finish()
}

/// Auxiliary-field closed form for the linear two-body system.
pub fn af_meson(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("af-meson-closed-form", tol);
    let opts = SolveOptions::default();
    let t = parse("2*sqrt(p^2)", "p").unwrap();
    let v = parse("r", "r").unwrap();
    for dim in [2u32, 3, 4] {
        for l in 0..=6 {
            for n in 0..=6 {
                let actual =
                    af::af2_energy(&t, &v, l, n, dim, AuxPotential::Harmonic, &opts)
                        .map(|e| e * e);
                let expected = catalog::meson_af_sq(1.0, dim, l, n);
                fam.record(&format!("D={dim} l={l} n={n}"), actual, expected, 0.0);
            }
        }
    }
    fam.finish()
}

/// Auxiliary-field closed form for the linear three-body system.
pub fn af_baryon(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("af-baryon-closed-form", tol);
    let opts = SolveOptions::default();
    let spec = linear3(1.0, 0.0);
    for dim in [2u32, 3, 4] {
        for l_total in 0..=6 {
            for n_total in 0..=6 {
                let actual =
                    af::af3_energy(&spec, l_total, n_total, dim, &opts).map(|e| e * e);
                let expected = catalog::baryon_af_sq(1.0, 0.0, dim, l_total, n_total);
                fam.record(&format!("D={dim} L={l_total} N={n_total}"), actual, expected, 0.0);
            }
        }
    }
    fam.finish()
}

/// Auxiliary levels with equal Q are exactly degenerate.
pub fn af_degeneracy(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("af-q-degeneracy", tol);
    let opts = SolveOptions::default();
    let t = parse("2*sqrt(p^2)", "p").unwrap();
    let v = parse("r", "r").unwrap();
    // (l, n) pairs sharing Q = 2n + l + D/2.
    let groups: [&[(u32, u32)]; 3] =
        [&[(4, 0), (2, 1), (0, 2)], &[(2, 0), (0, 1)], &[(6, 0), (4, 1), (2, 2), (0, 3)]];
    for group in groups {
        let mut reference: Option<f64> = None;
        for &(l, n) in group {
            let label = format!("l={l} n={n}");
            match af::af2_energy(&t, &v, l, n, 3, AuxPotential::Harmonic, &opts) {
                Ok(e) => match reference {
                    Some(e_ref) => fam.record(&label, Ok::<f64, String>(e), e_ref, 0.0),
                    None => reference = Some(e),
                },
                Err(err) => fam.fail(&label, err),
            }
        }
    }
    fam.finish()
}

/// Scaling T -> sigma*T, V -> sigma*V multiplies energies by sigma and
/// leaves the radius unchanged.
pub fn homogeneity(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("homogeneity", tol);
    let opts = SolveOptions::default();
    let cases = [("p^2/2", "-1/r", 2u32, 1u32), ("2*sqrt(p^2)", "r", 3, 1)];
    for (ts, vs, l, n) in cases {
        let t = parse(ts, "p").unwrap();
        let v = parse(vs, "r").unwrap();
        let qn = QuantumNumbers2B::new(3, l, n).unwrap();
        let base = match dos2::dos_energy(&t, &v, &qn, &opts) {
            Ok(sol) => sol,
            Err(e) => {
                fam.fail(&format!("T={ts} V={vs}"), e);
                continue;
            }
        };
        for sigma in [0.5, 2.0, 10.0] {
            let t_s = parse(&format!("{sigma}*({ts})"), "p").unwrap();
            let v_s = parse(&format!("{sigma}*({vs})"), "r").unwrap();
            let label = format!("T={ts} V={vs} sigma={sigma}");
            match dos2::dos_energy(&t_s, &v_s, &qn, &opts) {
                Ok(scaled) => {
                    fam.record(&format!("{label} r0"), Ok::<f64, String>(scaled.radius), base.radius, 0.0);
                    fam.record(
                        &format!("{label} E0"),
                        Ok::<f64, String>(scaled.circular_energy),
                        sigma * base.circular_energy,
                        0.0,
                    );
                    fam.record(
                        &format!("{label} deltaE"),
                        Ok::<f64, String>(scaled.radial_correction),
                        sigma * base.radial_correction,
                        0.0,
                    );
                    fam.record(
                        &format!("{label} E"),
                        Ok::<f64, String>(scaled.energy),
                        sigma * base.energy,
                        0.0,
                    );
                }
                Err(e) => fam.fail(&label, e),
            }
        }
    }
    fam.finish()
}

/// Stationarity residual stays below tol * max(1, |V'(r0)|) at the orbit.
pub fn stationarity_residual(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("stationarity-residual", tol);
    let opts = SolveOptions::default();
    let cases = [
        ("p^2/2", "r^2/2", 2.0),
        ("p^2/2", "-1/r", 1.5),
        ("2*sqrt(p^2)", "0.2*r", 3.5),
        ("p^2/2 + 0.0001*p^4", "r^2", 0.577),
        ("sqrt(p^2)", "3*r", 10.5),
    ];
    for (ts, vs, lambda) in cases {
        let t = parse(ts, "p").unwrap();
        let v = parse(vs, "r").unwrap();
        let label = format!("T={ts} V={vs} lambda={lambda}");
        match dos2::solve_orbit(&t, &v, lambda, &opts) {
            Ok(orbit) => {
                let scale = v.eval_jet2(orbit.radius).map(|j| j.d1.abs().max(1.0)).unwrap_or(1.0);
                fam.outcome.cells += 1;
                let err = orbit.residual.abs() / scale;
                if err > fam.outcome.max_err {
                    fam.outcome.max_err = err;
                    if err > tol && fam.outcome.failure.is_none() {
                        fam.outcome.failure =
                            Some(format!("{label}: residual {err:.3e} above {tol:.1e}"));
                    }
                }
            }
            Err(e) => fam.fail(&label, e),
        }
    }
    fam.finish()
}

/// Jet derivatives match Richardson-extrapolated central differences.
pub fn ad_consistency(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("ad-finite-difference", tol);
    let families = [
        "x^2/2",
        "2*sqrt(x^2)",
        "sqrt(x^2)",
        "0.2*x",
        "-1/x",
        "x^2",
        "x^2/2 + 0.0001*x^4",
        "exp(-x)",
        "log(x)",
        "abs(x)",
    ];
    for src in families {
        let f = match parse(src, "x") {
            Ok(f) => f,
            Err(e) => {
                fam.fail(src, e);
                continue;
            }
        };
        let mut x = 1e-2;
        while x <= 1e2 {
            let label = format!("{src} at x={x:.3e}");
            let jet = match f.eval_jet2(x) {
                Ok(j) => j,
                Err(e) => {
                    fam.fail(&label, e);
                    break;
                }
            };
            let h = 1e-5 * x.max(1.0);
            let stencil = |h: f64| -> Result<(f64, f64), crate::expr::ExprError> {
                let fp = f.eval(x + h)?;
                let fm = f.eval(x - h)?;
                Ok(((fp - fm) / (2.0 * h), (fp - 2.0 * jet.value + fm) / (h * h)))
            };
            match (stencil(h), stencil(0.5 * h)) {
                (Ok((d1a, d2a)), Ok((d1b, d2b))) => {
                    let fd1 = (4.0 * d1b - d1a) / 3.0;
                    let fd2 = (4.0 * d2b - d2a) / 3.0;
                    fam.record(&format!("{label} d1"), Ok::<f64, String>(jet.d1), fd1, 1.0);
                    fam.record(&format!("{label} d2"), Ok::<f64, String>(jet.d2), fd2, 1.0);
                }
                (Err(e), _) | (_, Err(e)) => fam.fail(&label, e),
            }
            x *= 10f64.powf(0.5);
        }
    }
    fam.finish()
}

/// Two-anyon oscillator levels: E = omega*(2n + |l - alpha| + 1) at D = 2.
pub fn anyon_oscillator(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("anyon-oscillator", tol);
    let opts = SolveOptions::default();
    let t = parse("p^2/2", "p").unwrap();
    let v = parse("r^2/2", "r").unwrap();
    for alpha in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for l in 0..=2u32 {
            let lambda = dos2::anyon_lambda(l, alpha);
            if lambda == 0.0 {
                continue;
            }
            for n in 0..=2u32 {
                let actual = dos2::dos_energy_lambda(&t, &v, lambda, n, &opts).map(|s| s.energy);
                let expected = 2.0 * n as f64 + lambda + 1.0;
                fam.record(&format!("alpha={alpha} l={l} n={n}"), actual, expected, 0.0);
            }
        }
    }
    fam.finish()
}

/// Ratio of radial to orbital squared-energy slopes is sqrt(2) for both the
/// two- and three-body linear systems.
pub fn regge_slope_ratio(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("regge-slope-ratio", tol);
    let opts = SolveOptions::default();
    let expected = 2f64.sqrt();
    let t2 = parse("2*sqrt(p^2)", "p").unwrap();
    let v2 = parse("r", "r").unwrap();
    let spec = linear3(1.0, 0.0);
    for dim in [2u32, 3, 4] {
        let (l, n) = (2u32, 1u32);
        let sq2 = |l: u32, n: u32| {
            dos2::dos_energy_squared(&t2, &v2, &QuantumNumbers2B::new(dim, l, n).unwrap(), &opts)
        };
        let label = format!("two-body D={dim}");
        match (sq2(l, n), sq2(l, n + 1), sq2(l + 1, n)) {
            (Ok(base), Ok(up_n), Ok(up_l)) => {
                fam.record(&label, Ok::<f64, String>((up_n - base) / (up_l - base)), expected, 0.0);
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => fam.fail(&label, e),
        }

        let sq3 = |l: u32, n: u32| {
            dos3::dos3_energy_squared(&spec, &QuantumNumbers3B::new(dim, l, n).unwrap(), &opts)
        };
        let label = format!("three-body D={dim}");
        match (sq3(l, n), sq3(l, n + 1), sq3(l + 1, n)) {
            (Ok(base), Ok(up_n), Ok(up_l)) => {
                fam.record(&label, Ok::<f64, String>((up_n - base) / (up_l - base)), expected, 0.0);
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => fam.fail(&label, e),
        }
    }
    fam.finish()
}

/// Outcome of the three-body minimal-length comparison.
///
/// The first-order formula is checked by extrapolating in the deformation:
/// with r(beta) = (E(beta) - E(0))/beta, the two-point combination
/// 2 r(beta/2) - r(beta) cancels the quadratic term.
pub fn minimal_length(slope_tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("minimal-length", slope_tol);
    let opts = SolveOptions::default();
    let (m, k) = (1.0, 1.0);
    let dim = 3u32;
    let betas = [1e-4, 5e-5];
    for (l_total, n_total) in [(0u32, 0u32), (1, 0), (2, 1)] {
        let qn = QuantumNumbers3B::new(dim, l_total, n_total).unwrap();
        let label = format!("L={l_total} N={n_total}");
        let e0 = catalog::minimal_length_ho3(m, k, 0.0, dim, l_total, n_total);

        let mut energies = [0.0f64; 2];
        let mut radii = [0.0f64; 2];
        let mut failed = false;
        for (i, beta) in betas.into_iter().enumerate() {
            let spec = ThreeBodySpec {
                kinetic: parse(&format!("p^2/(2*{m}) + {beta}/{m}*p^4"), "p").unwrap(),
                one_body: parse("0", "y").unwrap(),
                pair: parse(&format!("{k}*x^2"), "x").unwrap(),
            };
            match dos3::dos3_energy(&spec, &qn, &opts) {
                Ok(sol) => {
                    energies[i] = sol.energy;
                    radii[i] = sol.radius;
                }
                Err(e) => {
                    fam.fail(&format!("{label} beta={beta}"), e);
                    failed = true;
                    break;
                }
            }
        }
        if failed {
            continue;
        }

        let r1 = (energies[0] - e0) / betas[0];
        let r2 = (energies[1] - e0) / betas[1];
        let slope = 2.0 * r2 - r1;
        let expected = catalog::minimal_length_slope(k, dim, l_total, n_total);
        fam.record(&format!("{label} slope"), Ok::<f64, String>(slope), expected, 0.0);

        // |E - first-order formula| and |x0 - expansion| must scale as beta^2.
        let e_res: [f64; 2] = std::array::from_fn(|i| {
            (energies[i] - catalog::minimal_length_ho3(m, k, betas[i], dim, l_total, n_total)).abs()
        });
        fam.check(
            &format!("{label}: energy residual {:.3e} not O(beta^2)", e_res[0]),
            e_res[0] <= 2.0 * e_res[1] * (betas[0] / betas[1]).powi(2) + 1e-9,
        );
        let lambda = qn.lambda();
        let x_res: [f64; 2] = std::array::from_fn(|i| {
            (radii[i] - catalog::minimal_length_x0(m, k, betas[i], lambda)).abs()
        });
        fam.check(
            &format!("{label}: radius residual {:.3e} not O(beta^2)", x_res[0]),
            x_res[0] <= 2.0 * x_res[1] * (betas[0] / betas[1]).powi(2) + 1e-10,
        );
    }
    fam.finish()
}

/// Published benchmark, circular-orbit line: |E - published| <= tol (absolute).
pub fn table1_dos(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("table1-dos", tol);
    let opts = SolveOptions::default();
    let t = parse("2*sqrt(p^2)", "p").unwrap();
    let v = parse("r", "r").unwrap();
    for row in catalog::table1_reference().rows() {
        let qn = QuantumNumbers2B::new(3, row.l, row.n).unwrap();
        let actual = dos2::dos_energy_squared(&t, &v, &qn, &opts).map(f64::sqrt);
        fam.outcome.cells += 1;
        match actual {
            Ok(e) => {
                let err = (e - row.dos).abs();
                if err > fam.outcome.max_err {
                    fam.outcome.max_err = err;
                    if err > tol && fam.outcome.failure.is_none() {
                        fam.outcome.failure =
                            Some(format!("l={} n={}: {e} vs published {}", row.l, row.n, row.dos));
                    }
                }
            }
            Err(e) => fam.fail(&format!("l={} n={}", row.l, row.n), e),
        }
    }
    fam.finish()
}

/// Published benchmark, auxiliary-field line: |E - published| <= tol and the
/// computed value never undercuts the accurate reference level.
pub fn table1_af(tol: f64) -> FamilyOutcome {
    let mut fam = Family::new("table1-af", tol);
    let opts = SolveOptions::default();
    let t = parse("2*sqrt(p^2)", "p").unwrap();
    let v = parse("r", "r").unwrap();
    for row in catalog::table1_reference().rows() {
        let label = format!("l={} n={}", row.l, row.n);
        match af::af2_energy(&t, &v, row.l, row.n, 3, AuxPotential::Harmonic, &opts) {
            Ok(e) => {
                fam.outcome.cells += 1;
                let err = (e - row.af).abs();
                if err > fam.outcome.max_err {
                    fam.outcome.max_err = err;
                    if err > tol && fam.outcome.failure.is_none() {
                        fam.outcome.failure =
                            Some(format!("{label}: {e} vs published {}", row.af));
                    }
                }
                fam.check(
                    &format!("{label}: upper bound violated ({e} < {})", row.lagrange),
                    e >= row.lagrange,
                );
            }
            Err(e) => fam.fail(&label, e),
        }
    }
    fam.finish()
}

/// Run every family at its standard tolerance.
pub fn verify_all() -> Vec<FamilyOutcome> {
    vec![
        ad_consistency(1e-6),
        two_body_oscillator(1e-9),
        two_body_coulomb(1e-9),
        coulomb_monotone_convergence(),
        meson_closed_form(1e-9),
        three_body_oscillator(1e-9),
        baryon_closed_form(1e-9),
        wkb_oscillator(1e-8),
        wkb_meson(1e-8),
        wkb_baryon(1e-8),
        wkb_three_body_oscillator(1e-8),
        wkb_quadrature_stability(1e-8),
        af_meson(1e-9),
        af_baryon(1e-9),
        af_degeneracy(1e-12),
        anyon_oscillator(1e-9),
        regge_slope_ratio(1e-9),
        minimal_length(0.01),
        homogeneity(1e-9),
        stationarity_residual(1e-10),
        table1_dos(0.001),
        table1_af(0.001),
    ]
}
