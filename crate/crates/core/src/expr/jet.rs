use super::ExprError;

/// Value, first and second derivative of a function at a point.
///
/// Propagated through expression trees by truncated-Taylor (dual number)
/// arithmetic, so derivatives of polynomials up to degree 2 are exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    /// Jet of a constant: zero derivatives.
    pub fn constant(value: f64) -> Self {
        Jet2 { value, d1: 0.0, d2: 0.0 }
    }

    /// Jet of the free variable seeded at `x`.
    pub fn variable(x: f64) -> Self {
        Jet2 { value: x, d1: 1.0, d2: 0.0 }
    }

    fn is_constant(&self) -> bool {
        self.d1 == 0.0 && self.d2 == 0.0
    }

    fn finite(self, op: &str) -> Result<Self, ExprError> {
        if self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite() {
            Ok(self)
        } else {
            Err(ExprError::Domain(format!("non-finite result in `{op}`")))
        }
    }
}

pub(super) fn add(a: Jet2, b: Jet2) -> Result<Jet2, ExprError> {
    Jet2 { value: a.value + b.value, d1: a.d1 + b.d1, d2: a.d2 + b.d2 }.finite("+")
}

pub(super) fn sub(a: Jet2, b: Jet2) -> Result<Jet2, ExprError> {
    Jet2 { value: a.value - b.value, d1: a.d1 - b.d1, d2: a.d2 - b.d2 }.finite("-")
}

pub(super) fn neg(a: Jet2) -> Jet2 {
    Jet2 { value: -a.value, d1: -a.d1, d2: -a.d2 }
}

pub(super) fn mul(a: Jet2, b: Jet2) -> Result<Jet2, ExprError> {
    Jet2 {
        value: a.value * b.value,
        d1: a.d1 * b.value + a.value * b.d1,
        d2: a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2,
    }
    .finite("*")
}

pub(super) fn div(a: Jet2, b: Jet2) -> Result<Jet2, ExprError> {
    if b.value == 0.0 {
        return Err(ExprError::Domain("division by zero".into()));
    }
    let value = a.value / b.value;
    let d1 = (a.d1 - value * b.d1) / b.value;
    let d2 = (a.d2 - 2.0 * d1 * b.d1 - value * b.d2) / b.value;
    Jet2 { value, d1, d2 }.finite("/")
}

pub(super) fn sqrt(a: Jet2) -> Result<Jet2, ExprError> {
    if a.value < 0.0 {
        return Err(ExprError::Domain("sqrt of negative argument".into()));
    }
    if a.value == 0.0 {
        if a.is_constant() {
            return Ok(Jet2::constant(0.0));
        }
        return Err(ExprError::Domain("sqrt derivative singular at zero argument".into()));
    }
    let s = a.value.sqrt();
    let d1 = a.d1 / (2.0 * s);
    let d2 = a.d2 / (2.0 * s) - a.d1 * a.d1 / (4.0 * s * s * s);
    Jet2 { value: s, d1, d2 }.finite("sqrt")
}

pub(super) fn exp(a: Jet2) -> Result<Jet2, ExprError> {
    let e = a.value.exp();
    Jet2 { value: e, d1: e * a.d1, d2: e * (a.d2 + a.d1 * a.d1) }.finite("exp")
}

pub(super) fn log(a: Jet2) -> Result<Jet2, ExprError> {
    if a.value <= 0.0 {
        return Err(ExprError::Domain("log of non-positive argument".into()));
    }
    let r = a.d1 / a.value;
    Jet2 { value: a.value.ln(), d1: r, d2: a.d2 / a.value - r * r }.finite("log")
}

// Derivative of |u| at u = 0 is taken to be 0 by convention.
pub(super) fn abs(a: Jet2) -> Result<Jet2, ExprError> {
    let s = if a.value > 0.0 {
        1.0
    } else if a.value < 0.0 {
        -1.0
    } else {
        0.0
    };
    Jet2 { value: a.value.abs(), d1: s * a.d1, d2: s * a.d2 }.finite("abs")
}

pub(super) fn pow(a: Jet2, b: Jet2) -> Result<Jet2, ExprError> {
    if b.is_constant() {
        let c = b.value;
        if a.value == 0.0 && c < 0.0 {
            return Err(ExprError::Domain("0 raised to negative power".into()));
        }
        if a.value < 0.0 && c.fract() != 0.0 {
            return Err(ExprError::Domain(
                "negative base raised to non-integer power".into(),
            ));
        }
        let value = a.value.powf(c);
        let d1 = c * a.value.powf(c - 1.0) * a.d1;
        let d2 = c * (c - 1.0) * a.value.powf(c - 2.0) * a.d1 * a.d1
            + c * a.value.powf(c - 1.0) * a.d2;
        return Jet2 { value, d1, d2 }.finite("^");
    }
    // Variable exponent: a^b = exp(b*log(a)), defined for a > 0.
    if a.value <= 0.0 {
        return Err(ExprError::Domain(
            "power with variable exponent requires positive base".into(),
        ));
    }
    exp(mul(b, log(a)?)?)
}
