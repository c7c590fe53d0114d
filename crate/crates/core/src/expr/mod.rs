//! Single-variable math expressions with exact first and second derivatives.
//!
//! Kinetic and potential functions are supplied as text, e.g. `"p^2/2"` or
//! `"2*sqrt(p^2)"`, and parsed into an immutable syntax tree over exactly one
//! free variable. Evaluation propagates truncated-Taylor (dual number)
//! arithmetic through the tree, so first and second derivatives come out
//! exact to machine precision rather than from finite differences.
//!
//! Grammar: `+ -` below `* /` below unary minus below `^` (right
//! associative), with `sqrt`, `exp`, `log`, `abs` and parentheses. Numeric
//! literals may use scientific notation. Any identifier other than the
//! declared variable is rejected at parse time.

mod invert;
mod jet;
mod parse;

pub use invert::invert_monotone;
pub use jet::Jet2;

use std::fmt;

/// Errors from parsing, evaluating or inverting expressions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("target {y} not bracketed: f(lo)={f_lo}, f(hi)={f_hi}")]
    NotBracketed { y: f64, f_lo: f64, f_hi: f64 },
    #[error("function is not strictly monotone near x={at}")]
    NonMonotone { at: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Node {
    Const(f64),
    Var,
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Sqrt(Box<Node>),
    Exp(Box<Node>),
    Log(Box<Node>),
    Abs(Box<Node>),
}

/// A parsed function of one real variable. Immutable; all evaluation is pure.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    root: Node,
    var: String,
}

/// Parse `source` as a function of the single free variable `varname`.
pub fn parse(source: &str, varname: &str) -> Result<Expression, ExprError> {
    if !parse::valid_varname(varname) {
        return Err(ExprError::Syntax {
            pos: 0,
            message: format!("invalid variable name `{varname}`"),
        });
    }
    let root = parse::parse_tree(source, varname)?;
    Ok(Expression { root, var: varname.to_string() })
}

impl Expression {
    pub fn var_name(&self) -> &str {
        &self.var
    }

    /// Evaluate the function value at `x`.
    pub fn eval(&self, x: f64) -> Result<f64, ExprError> {
        eval_value(&self.root, x)
    }

    /// Evaluate value, first and second derivative at `x`.
    pub fn eval_jet2(&self, x: f64) -> Result<Jet2, ExprError> {
        eval_jet(&self.root, Jet2::variable(x))
    }

    /// Functional composition: returns `self(inner(t))` in `inner`'s variable.
    ///
    /// Derivatives of the composed expression follow the chain rule exactly,
    /// since jets propagate through the substituted tree.
    pub fn compose(&self, inner: &Expression) -> Expression {
        Expression {
            root: substitute(&self.root, &inner.root),
            var: inner.var.clone(),
        }
    }

    pub(crate) fn from_node(root: Node, var: &str) -> Expression {
        Expression { root, var: var.to_string() }
    }

    pub(crate) fn root(&self) -> &Node {
        &self.root
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, &self.root, &self.var, 0)
    }
}

/// Convenience shorthand used to evaluate the value+derivatives of a parsed
/// function at a point.
pub fn eval_jet2(f: &Expression, x: f64) -> Result<Jet2, ExprError> {
    f.eval_jet2(x)
}

fn substitute(node: &Node, replacement: &Node) -> Node {
    match node {
        Node::Const(c) => Node::Const(*c),
        Node::Var => replacement.clone(),
        Node::Add(a, b) => Node::Add(
            Box::new(substitute(a, replacement)),
            Box::new(substitute(b, replacement)),
        ),
        Node::Sub(a, b) => Node::Sub(
            Box::new(substitute(a, replacement)),
            Box::new(substitute(b, replacement)),
        ),
        Node::Mul(a, b) => Node::Mul(
            Box::new(substitute(a, replacement)),
            Box::new(substitute(b, replacement)),
        ),
        Node::Div(a, b) => Node::Div(
            Box::new(substitute(a, replacement)),
            Box::new(substitute(b, replacement)),
        ),
        Node::Pow(a, b) => Node::Pow(
            Box::new(substitute(a, replacement)),
            Box::new(substitute(b, replacement)),
        ),
        Node::Neg(a) => Node::Neg(Box::new(substitute(a, replacement))),
        Node::Sqrt(a) => Node::Sqrt(Box::new(substitute(a, replacement))),
        Node::Exp(a) => Node::Exp(Box::new(substitute(a, replacement))),
        Node::Log(a) => Node::Log(Box::new(substitute(a, replacement))),
        Node::Abs(a) => Node::Abs(Box::new(substitute(a, replacement))),
    }
}

fn finite_value(v: f64, op: &str) -> Result<f64, ExprError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ExprError::Domain(format!("non-finite result in `{op}`")))
    }
}

fn eval_value(node: &Node, x: f64) -> Result<f64, ExprError> {
    match node {
        Node::Const(c) => Ok(*c),
        Node::Var => Ok(x),
        Node::Add(a, b) => finite_value(eval_value(a, x)? + eval_value(b, x)?, "+"),
        Node::Sub(a, b) => finite_value(eval_value(a, x)? - eval_value(b, x)?, "-"),
        Node::Mul(a, b) => finite_value(eval_value(a, x)? * eval_value(b, x)?, "*"),
        Node::Div(a, b) => {
            let d = eval_value(b, x)?;
            if d == 0.0 {
                return Err(ExprError::Domain("division by zero".into()));
            }
            finite_value(eval_value(a, x)? / d, "/")
        }
        Node::Pow(a, b) => {
            let base = eval_value(a, x)?;
            let exponent = eval_value(b, x)?;
            if base == 0.0 && exponent < 0.0 {
                return Err(ExprError::Domain("0 raised to negative power".into()));
            }
            if base < 0.0 && exponent.fract() != 0.0 {
                return Err(ExprError::Domain(
                    "negative base raised to non-integer power".into(),
                ));
            }
            finite_value(base.powf(exponent), "^")
        }
        Node::Neg(a) => Ok(-eval_value(a, x)?),
        Node::Sqrt(a) => {
            let v = eval_value(a, x)?;
            if v < 0.0 {
                return Err(ExprError::Domain("sqrt of negative argument".into()));
            }
            Ok(v.sqrt())
        }
        Node::Exp(a) => finite_value(eval_value(a, x)?.exp(), "exp"),
        Node::Log(a) => {
            let v = eval_value(a, x)?;
            if v <= 0.0 {
                return Err(ExprError::Domain("log of non-positive argument".into()));
            }
            Ok(v.ln())
        }
        Node::Abs(a) => Ok(eval_value(a, x)?.abs()),
    }
}

fn eval_jet(node: &Node, x: Jet2) -> Result<Jet2, ExprError> {
    match node {
        Node::Const(c) => Ok(Jet2::constant(*c)),
        Node::Var => Ok(x),
        Node::Add(a, b) => jet::add(eval_jet(a, x)?, eval_jet(b, x)?),
        Node::Sub(a, b) => jet::sub(eval_jet(a, x)?, eval_jet(b, x)?),
        Node::Mul(a, b) => jet::mul(eval_jet(a, x)?, eval_jet(b, x)?),
        Node::Div(a, b) => jet::div(eval_jet(a, x)?, eval_jet(b, x)?),
        Node::Pow(a, b) => jet::pow(eval_jet(a, x)?, eval_jet(b, x)?),
        Node::Neg(a) => Ok(jet::neg(eval_jet(a, x)?)),
        Node::Sqrt(a) => jet::sqrt(eval_jet(a, x)?),
        Node::Exp(a) => jet::exp(eval_jet(a, x)?),
        Node::Log(a) => jet::log(eval_jet(a, x)?),
        Node::Abs(a) => jet::abs(eval_jet(a, x)?),
    }
}

fn precedence(node: &Node) -> u8 {
    match node {
        Node::Add(..) | Node::Sub(..) => 1,
        Node::Mul(..) | Node::Div(..) => 2,
        Node::Neg(..) => 3,
        Node::Pow(..) => 4,
        _ => 5,
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, node: &Node, var: &str, parent: u8) -> fmt::Result {
    let prec = precedence(node);
    let parens = prec < parent;
    if parens {
        write!(f, "(")?;
    }
    match node {
        Node::Const(c) => write!(f, "{c}")?,
        Node::Var => write!(f, "{var}")?,
        Node::Add(a, b) => {
            write_node(f, a, var, prec)?;
            write!(f, " + ")?;
            write_node(f, b, var, prec)?;
        }
        Node::Sub(a, b) => {
            write_node(f, a, var, prec)?;
            write!(f, " - ")?;
            write_node(f, b, var, prec + 1)?;
        }
        Node::Mul(a, b) => {
            write_node(f, a, var, prec)?;
            write!(f, "*")?;
            write_node(f, b, var, prec)?;
        }
        Node::Div(a, b) => {
            write_node(f, a, var, prec)?;
            write!(f, "/")?;
            write_node(f, b, var, prec + 1)?;
        }
        Node::Pow(a, b) => {
            write_node(f, a, var, prec + 1)?;
            write!(f, "^")?;
            write_node(f, b, var, prec)?;
        }
        Node::Neg(a) => {
            write!(f, "-")?;
            write_node(f, a, var, prec + 1)?;
        }
        Node::Sqrt(a) | Node::Exp(a) | Node::Log(a) | Node::Abs(a) => {
            let name = match node {
                Node::Sqrt(..) => "sqrt",
                Node::Exp(..) => "exp",
                Node::Log(..) => "log",
                _ => "abs",
            };
            write!(f, "{name}(")?;
            write_node(f, a, var, 0)?;
            write!(f, ")")?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet(src: &str, x: f64) -> Jet2 {
        parse(src, "r").unwrap().eval_jet2(x).unwrap()
    }

    #[test]
    fn parses_catalog_kinetic_terms() {
        assert!(parse("p^2/(2*1)", "p").is_ok());
        assert!(parse("2*sqrt(p^2)", "p").is_ok());
        assert!(parse("p^2/2 + 0.01*p^4", "p").is_ok());
    }

    #[test]
    fn rejects_unknown_identifier() {
        match parse("a*r", "r") {
            Err(ExprError::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "a");
                assert_eq!(pos, 0);
            }
            other => panic!("expected unknown-identifier error, got {other:?}"),
        }
    }

    #[test]
    fn reports_syntax_error_position() {
        match parse("1 + * 2", "r") {
            Err(ExprError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse("", "r").is_err());
        assert!(parse("1 + 2)", "r").is_err());
        assert!(parse("sqrt 2", "r").is_err());
    }

    #[test]
    fn jet_of_square_is_exact() {
        let j = jet("r^2", 3.0);
        assert_eq!(j.value, 9.0);
        assert_eq!(j.d1, 6.0);
        assert_eq!(j.d2, 2.0);
    }

    #[test]
    fn jet_of_linear_is_exact() {
        let j = jet("0.2*r", 5.0);
        assert_eq!(j.value, 1.0);
        assert_eq!(j.d1, 0.2);
        assert_eq!(j.d2, 0.0);
    }

    #[test]
    fn jet_of_inverse_matches_analytic_derivatives() {
        let j = jet("-1/r", 2.0);
        assert!((j.value + 0.5).abs() < 1e-15);
        assert!((j.d1 - 0.25).abs() < 1e-15);
        assert!((j.d2 + 0.25).abs() < 1e-15);
    }

    #[test]
    fn precedence_and_associativity() {
        // -x^2 is -(x^2); power is right associative; x^-1 allowed.
        assert_eq!(jet("-r^2", 2.0).value, -4.0);
        assert_eq!(jet("2^r^2", 2.0).value, 2f64.powi(4));
        assert_eq!(jet("r^-1", 4.0).value, 0.25);
        assert_eq!(jet("2*-r", 3.0).value, -6.0);
        assert_eq!(jet("1e-2*r", 1.0).value, 0.01);
    }

    #[test]
    fn domain_errors_are_reported() {
        let f = parse("log(r)", "r").unwrap();
        assert!(matches!(f.eval(-1.0), Err(ExprError::Domain(_))));
        assert!(matches!(f.eval(0.0), Err(ExprError::Domain(_))));
        let g = parse("1/r", "r").unwrap();
        assert!(matches!(g.eval(0.0), Err(ExprError::Domain(_))));
        let h = parse("r^-2", "r").unwrap();
        assert!(matches!(h.eval(0.0), Err(ExprError::Domain(_))));
        let s = parse("sqrt(r)", "r").unwrap();
        assert!(matches!(s.eval(-4.0), Err(ExprError::Domain(_))));
        // Value at the sqrt kink is fine; the jet there is singular.
        let m = parse("2*sqrt(r^2)", "r").unwrap();
        assert_eq!(m.eval(0.0).unwrap(), 0.0);
        assert!(m.eval_jet2(0.0).is_err());
    }

    #[test]
    fn abs_derivative_convention_at_zero() {
        let j = jet("abs(r)", 0.0);
        assert_eq!((j.value, j.d1, j.d2), (0.0, 0.0, 0.0));
        let j = jet("abs(r)", -2.0);
        assert_eq!((j.value, j.d1, j.d2), (2.0, -1.0, 0.0));
    }

    #[test]
    fn compose_applies_chain_rule() {
        let outer = parse("y^2 + y", "y").unwrap();
        let inner = parse("3*x", "x").unwrap();
        let composed = outer.compose(&inner);
        assert_eq!(composed.var_name(), "x");
        let j = composed.eval_jet2(2.0).unwrap();
        // (3x)^2 + 3x at x=2: 42, d1 = 18x+3 = 39, d2 = 18.
        assert_eq!((j.value, j.d1, j.d2), (42.0, 39.0, 18.0));
    }

    #[test]
    fn display_round_trips_through_parser() {
        for src in ["r^2/2 + 1/r", "-(r + 2)*r^-2", "2*sqrt(r^2) - exp(-r)/3"] {
            let f = parse(src, "r").unwrap();
            let printed = f.to_string();
            let reparsed = parse(&printed, "r").unwrap();
            for i in 1..=10 {
                let x = 0.37 * i as f64;
                let a = f.eval(x).unwrap();
                let b = reparsed.eval(x).unwrap();
                assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{src} -> {printed}");
            }
        }
    }

    #[test]
    fn invert_monotone_examples() {
        let sq = parse("r^2", "r").unwrap();
        let x = invert_monotone(&sq, 9.0, 0.0, 10.0).unwrap();
        assert!((x - 3.0).abs() < 1e-10);

        let lin = parse("0.2*r", "r").unwrap();
        let x = invert_monotone(&lin, 1.0, 0.0, 100.0).unwrap();
        assert!((x - 5.0).abs() < 1e-9);

        let meson = parse("2*p", "p").unwrap();
        let x = invert_monotone(&meson, 4.0, 0.0, 100.0).unwrap();
        assert!((x - 2.0).abs() < 1e-10);
    }

    #[test]
    fn invert_monotone_round_trip() {
        let f = parse("r^2/2 + log(r+1)", "r").unwrap();
        for i in 1..=20 {
            let x = 0.5 * i as f64;
            let y = f.eval(x).unwrap();
            let back = invert_monotone(&f, y, 0.0, 20.0).unwrap();
            assert!((back - x).abs() <= 1e-10 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn invert_monotone_detects_bad_inputs() {
        let f = parse("r^2", "r").unwrap();
        assert!(matches!(
            invert_monotone(&f, 200.0, 0.0, 10.0),
            Err(ExprError::NotBracketed { .. })
        ));
        // Not monotone on a bracket straddling the minimum.
        let g = parse("(r-5)^2", "r").unwrap();
        assert!(matches!(
            invert_monotone(&g, 4.0, 0.0, 10.0),
            Err(ExprError::NonMonotone { .. })
        ));
    }

    #[test]
    fn ad_matches_finite_differences_on_catalog_functions() {
        let families = [
            "x^2/2",
            "2*sqrt(x^2)",
            "sqrt(x^2)",
            "0.2*x",
            "-1/x",
            "x^2/2 + 0.0001*x^4",
            "exp(-x)",
            "log(x)",
            "abs(x)",
            "x^1.5",
            "1/(1 + x^2)",
        ];
        for src in families {
            let f = parse(src, "x").unwrap();
            let mut x = 1e-2;
            while x <= 1e2 {
                let j = f.eval_jet2(x).unwrap();
                let h = 1e-5 * x.max(1.0);
                let d1 = |h: f64| {
                    (f.eval(x + h).unwrap() - f.eval(x - h).unwrap()) / (2.0 * h)
                };
                let d2 = |h: f64| {
                    (f.eval(x + h).unwrap() - 2.0 * j.value + f.eval(x - h).unwrap()) / (h * h)
                };
                // One step of Richardson extrapolation on the central stencils.
                let fd1 = (4.0 * d1(0.5 * h) - d1(h)) / 3.0;
                let fd2 = (4.0 * d2(0.5 * h) - d2(h)) / 3.0;
                let s1 = 1.0 + j.d1.abs();
                let s2 = 1.0 + j.d2.abs();
                assert!((j.d1 - fd1).abs() / s1 < 1e-6, "{src} d1 at {x}: {} vs {fd1}", j.d1);
                assert!((j.d2 - fd2).abs() / s2 < 1e-6, "{src} d2 at {x}: {} vs {fd2}", j.d2);
                x *= 10f64.powf(0.25);
            }
        }
    }
}
