use super::{ExprError, Expression};

const SAMPLE_POINTS: usize = 33;
const MAX_ITER: usize = 200;

/// Solve f(x) = y for x on the bracket [lo, hi].
///
/// `f` must be strictly monotone on the bracket and `y` must lie between
/// f(lo) and f(hi). Monotonicity is screened by sampling 33 equally spaced
/// points before refinement; the root is then located by a bracketed
/// secant/bisection hybrid until |f(x) - y| <= 1e-12 * (1 + |y|).
pub fn invert_monotone(f: &Expression, y: f64, lo: f64, hi: f64) -> Result<f64, ExprError> {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let tol = 1e-12 * (1.0 + y.abs());

    if lo == hi {
        let fx = f.eval(lo)?;
        return if (fx - y).abs() <= tol {
            Ok(lo)
        } else {
            Err(ExprError::NotBracketed { y, f_lo: fx, f_hi: fx })
        };
    }

    let mut xs = [0.0_f64; SAMPLE_POINTS];
    let mut fs = [0.0_f64; SAMPLE_POINTS];
    let step = (hi - lo) / (SAMPLE_POINTS - 1) as f64;
    for i in 0..SAMPLE_POINTS {
        let x = if i == SAMPLE_POINTS - 1 { hi } else { lo + step * i as f64 };
        xs[i] = x;
        fs[i] = f.eval(x)?;
    }
    let increasing = fs[SAMPLE_POINTS - 1] > fs[0];
    for i in 0..SAMPLE_POINTS - 1 {
        let rising = fs[i + 1] > fs[i];
        if fs[i + 1] == fs[i] || rising != increasing {
            return Err(ExprError::NonMonotone { at: xs[i] });
        }
    }

    let (f_lo, f_hi) = (fs[0], fs[SAMPLE_POINTS - 1]);
    let (f_min, f_max) = if increasing { (f_lo, f_hi) } else { (f_hi, f_lo) };
    if y < f_min - tol || y > f_max + tol {
        return Err(ExprError::NotBracketed { y, f_lo, f_hi });
    }
    // Allow targets that graze an endpoint by no more than the tolerance.
    let y = y.clamp(f_min, f_max);

    let mut a = lo;
    let mut b = hi;
    let mut ga = f_lo - y;
    let mut gb = f_hi - y;
    if ga.abs() <= tol {
        return Ok(a);
    }
    if gb.abs() <= tol {
        return Ok(b);
    }

    let mut width = b - a;
    for _ in 0..MAX_ITER {
        // Secant candidate, falling back to the midpoint whenever it leaves
        // the bracket or the bracket has stopped shrinking fast enough.
        let mut x = b - gb * (b - a) / (gb - ga);
        if !x.is_finite() || x <= a || x >= b || (b - a) > 0.75 * width {
            x = 0.5 * (a + b);
        }
        width = b - a;

        let gx = f.eval(x)? - y;
        if gx.abs() <= tol {
            return Ok(x);
        }
        if (gx < 0.0) == (ga < 0.0) {
            a = x;
            ga = gx;
        } else {
            b = x;
            gb = gx;
        }
        if b - a <= f64::EPSILON * (1.0 + a.abs().max(b.abs())) {
            let (x, g) = if ga.abs() <= gb.abs() { (a, ga) } else { (b, gb) };
            return if g.abs() <= tol { Ok(x) } else { Err(ExprError::NonMonotone { at: x }) };
        }
    }
    let (x, g) = if ga.abs() <= gb.abs() { (a, ga) } else { (b, gb) };
    if g.abs() <= tol {
        Ok(x)
    } else {
        Err(ExprError::NonMonotone { at: x })
    }
}
