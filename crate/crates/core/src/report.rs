//! Result reports and their text/CSV/JSON renderings.
//!
//! The JSON schema is fixed:
//!
//! ```text
//! { "inputs": {...}, "method": str, "r0": num, "E0": num, "deltaE": num,
//!   "E": num, "E_squared": num|null,
//!   "diagnostics": { "residual": num, "roots_found": int, "bound_class": str|null } }
//! ```
//!
//! JSON and CSV numbers carry 17 significant digits, enough for a decimal
//! string to recover the f64 bit-for-bit; text mode rounds to 6 significant
//! digits.

/// Echo of the inputs a report was computed from.
#[derive(Debug, Clone)]
pub struct ReportInputs {
    pub kinetic: String,
    pub potential: String,
    /// One-body potential; three-body runs only.
    pub one_body: Option<String>,
    pub dim: u32,
    /// l for two-body runs, L for three-body runs.
    pub orbital: u32,
    /// n for two-body runs, N for three-body runs.
    pub radial: u32,
    /// Method as requested (before any degenerate-case dispatch).
    pub method: String,
    pub aux: Option<String>,
    pub anyon_alpha: Option<f64>,
    /// Orbital factor actually used by the solver.
    pub lambda: f64,
}

/// A solved level, shaped for output.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub inputs: ReportInputs,
    /// Method that actually ran.
    pub method: String,
    /// Circular-orbit radius, or the turning point for WKB runs.
    pub r0: f64,
    pub e0: f64,
    pub delta_e: f64,
    pub e: f64,
    pub e_squared: Option<f64>,
    pub residual: f64,
    pub roots_found: usize,
    pub bound_class: Option<String>,
}

/// Format with `sig` significant digits, plain or scientific as appropriate.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sig = sig.max(1);
    let exp = x.abs().log10().floor() as i32;
    if exp >= -4 && exp < sig as i32 {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_decimal(&s)
    } else {
        let s = format!("{:.*e}", sig - 1, x);
        trim_exponent(&s)
    }
}

/// Full-precision decimal rendering (17 significant digits): parsing the
/// string recovers the exact f64.
pub fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}

fn trim_decimal(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

fn trim_exponent(s: &str) -> String {
    match s.split_once('e') {
        Some((mantissa, exp)) => format!("{}e{exp}", trim_decimal(mantissa)),
        None => s.to_string(),
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_str(s: &str) -> String {
    format!("\"{}\"", json_escape(s))
}

fn json_opt_str(v: &Option<String>) -> String {
    match v {
        Some(s) => json_str(s),
        None => "null".to_string(),
    }
}

fn json_opt_num(v: Option<f64>) -> String {
    match v {
        Some(x) => fmt_full(x),
        None => "null".to_string(),
    }
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        let i = &self.inputs;
        let inputs = format!(
            concat!(
                "{{\"T\": {}, \"V\": {}, \"U\": {}, \"D\": {}, ",
                "\"orbital\": {}, \"radial\": {}, \"method\": {}, ",
                "\"aux\": {}, \"anyon_alpha\": {}, \"lambda\": {}}}"
            ),
            json_str(&i.kinetic),
            json_str(&i.potential),
            json_opt_str(&i.one_body),
            i.dim,
            i.orbital,
            i.radial,
            json_str(&i.method),
            json_opt_str(&i.aux),
            json_opt_num(i.anyon_alpha),
            fmt_full(i.lambda),
        );
        format!(
            concat!(
                "{{\"inputs\": {}, \"method\": {}, \"r0\": {}, \"E0\": {}, ",
                "\"deltaE\": {}, \"E\": {}, \"E_squared\": {}, ",
                "\"diagnostics\": {{\"residual\": {}, \"roots_found\": {}, ",
                "\"bound_class\": {}}}}}"
            ),
            inputs,
            json_str(&self.method),
            fmt_full(self.r0),
            fmt_full(self.e0),
            fmt_full(self.delta_e),
            fmt_full(self.e),
            json_opt_num(self.e_squared),
            fmt_full(self.residual),
            self.roots_found,
            json_opt_str(&self.bound_class),
        )
    }

    pub fn csv_header() -> &'static str {
        "D,l_or_L,n_or_N,method,r0,E0,deltaE,E,E_squared"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.inputs.dim,
            self.inputs.orbital,
            self.inputs.radial,
            self.method,
            fmt_full(self.r0),
            fmt_full(self.e0),
            fmt_full(self.delta_e),
            fmt_full(self.e),
            self.e_squared.map(fmt_full).unwrap_or_default(),
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("method: {}\n", self.method));
        out.push_str(&format!("lambda: {}\n", fmt_sig(self.inputs.lambda, 6)));
        let radius_label = if self.method == "wkb" { "turning point" } else { "r0" };
        out.push_str(&format!("{radius_label}: {}\n", fmt_sig(self.r0, 6)));
        out.push_str(&format!("E0: {}\n", fmt_sig(self.e0, 6)));
        out.push_str(&format!("deltaE: {}\n", fmt_sig(self.delta_e, 6)));
        out.push_str(&format!("E: {}\n", fmt_sig(self.e, 6)));
        if let Some(sq) = self.e_squared {
            out.push_str(&format!("E_squared: {}\n", fmt_sig(sq, 6)));
        }
        out.push_str(&format!("residual: {}\n", fmt_sig(self.residual, 6)));
        out.push_str(&format!("roots found: {}\n", self.roots_found));
        if let Some(class) = &self.bound_class {
            out.push_str(&format!("bound class: {class}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_sig(5.5, 6), "5.5");
        assert_eq!(fmt_sig(3.1075479480600746, 6), "3.10755");
        assert_eq!(fmt_sig(-0.07407407407, 6), "-0.0740741");
        assert_eq!(fmt_sig(123456789.0, 6), "1.23457e8");
        assert_eq!(fmt_sig(1.5e-7, 6), "1.5e-7");
        assert_eq!(fmt_sig(0.0, 6), "0");
        assert_eq!(fmt_sig(1e6, 6), "1e6");
    }

    #[test]
    fn full_precision_round_trips() {
        for &x in &[
            3.107547948060075,
            -0.07407407407407407,
            1.0 / 3.0,
            f64::MIN_POSITIVE,
            2.25e300,
            -5.5,
        ] {
            let s = fmt_full(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn json_escaping() {
        assert_eq!(json_str("a\"b\\c"), "\"a\\\"b\\\\c\"");
    }
}
