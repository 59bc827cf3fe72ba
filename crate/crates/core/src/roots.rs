//! Bracketed scalar root finding.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Iteration cap shared by every bisection in the crate.
pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Bisection on `[lo, hi]` (either order). Stops when the bracket width
/// falls below `rel_tol` relative to the smaller endpoint magnitude, or an
/// exact zero is hit. Wide positive brackets are split geometrically.
pub fn bisect<T, F>(problem: &'static str, mut func: F, lo: T, hi: T, rel_tol: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> T,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = func(a);
    let fb = func(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoRoot {
            problem,
            lo: a.as_f64(),
            hi: b.as_f64(),
            f_lo: fa.as_f64(),
            f_hi: fb.as_f64(),
        });
    }
    let two = T::lit(2.0);
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let mid = if a > T::zero() && b > T::lit(4.0) * a {
            (a * b).sqrt()
        } else {
            a + (b - a) / two
        };
        if b - a <= rel_tol * a.abs().min(b.abs()) || mid <= a || mid >= b {
            return Ok(mid);
        }
        let fm = func(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(a + (b - a) / two)
}

/// Grows `start` geometrically by `factor` until `func` becomes positive.
/// Returns the first point with a positive value.
pub fn expand_until_positive<T, F>(
    problem: &'static str,
    mut func: F,
    start: T,
    factor: T,
) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> T,
{
    let mut x = start;
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let v = func(x);
        if v > T::zero() {
            return Ok(x);
        }
        if !v.is_finite() || !x.is_finite() {
            break;
        }
        x = x * factor;
    }
    Err(Error::NoRoot {
        problem,
        lo: start.as_f64(),
        hi: x.as_f64(),
        f_lo: func(start).as_f64(),
        f_hi: func(x).as_f64(),
    })
}
