//! Composite Newton–Cotes rules on a uniform partition.

use crate::error::{Error, Result};

/// Composite Simpson rule with `n` (even, ≥ 2) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Result<f64> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::invalid("n_quad", format!("simpson needs an even count >= 2, got {n}")));
    }
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    Ok(acc * h / 3.0)
}

/// Composite trapezoid rule with `n ≥ 1` subintervals.
pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n_quad", "trapezoid needs at least one subinterval"));
    }
    let h = (b - a) / n as f64;
    let mut acc = 0.5 * (f(a) + f(b));
    for i in 1..n {
        acc += f(a + i as f64 * h);
    }
    Ok(acc * h)
}
