//! Scalar root finding and minimization used by the norm and conjugate code.

use crate::error::{Error, Result};

/// Inverse golden ratio, `(√5 − 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Bisection for the crossing of a nondecreasing `f` through `target` on
/// `[lo, hi]`, assuming `f(lo) <= target <= f(hi)`.
///
/// Stops when the bracket is narrower than `rel_tol * max(1, |hi|)` or can no
/// longer be split in floating point. Returns the final bracket.
pub fn bisect_increasing<F>(f: F, target: f64, mut lo: f64, mut hi: f64, rel_tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    for _ in 0..2200 {
        if hi - lo <= rel_tol * hi.abs().max(1.0) {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Smallest power-of-two multiple of `start` at which `f(x) >= target`.
///
/// Fails once `x` exceeds `limit`.
pub fn expand_upper<F>(f: F, target: f64, start: f64, limit: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut x = start;
    while x <= limit {
        if f(x) >= target {
            return Some(x);
        }
        x *= 2.0;
    }
    None
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
///
/// Returns `(argmin, min)`. The search stops when the bracket width drops
/// below `rel_tol * (|a| + |b|)` or after `max_iter` iterations.
pub fn golden_min<F>(mut f: F, mut a: f64, mut b: f64, rel_tol: f64, max_iter: usize) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= rel_tol * (a.abs() + b.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimizes a convex `f` on `(0, ∞)`.
///
/// A bracket is found by doubling/halving from `start`, then refined by
/// golden-section search. If `f` keeps decreasing towards `0` or `∞` the
/// best value seen at the edge of the representable range is returned.
pub fn minimize_positive<F>(f: F, start: f64, rel_tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let mut x = start;
    let mut fx = f(x);
    if !fx.is_finite() {
        return Err(Error::Numeric(format!(
            "objective is {fx} at the starting point {start}"
        )));
    }
    let (lo, hi);
    let f_down = f(x * 0.5);
    if f_down < fx {
        x *= 0.5;
        fx = f_down;
        loop {
            let next = x * 0.5;
            if next < f64::MIN_POSITIVE {
                return Ok((x, fx));
            }
            let fnext = f(next);
            if fnext < fx {
                x = next;
                fx = fnext;
            } else {
                lo = next;
                hi = x * 2.0;
                break;
            }
        }
    } else {
        loop {
            let next = x * 2.0;
            if next > f64::MAX / 4.0 {
                return Ok((x, fx));
            }
            let fnext = f(next);
            if fnext < fx {
                x = next;
                fx = fnext;
            } else {
                lo = x * 0.5;
                hi = next;
                break;
            }
        }
    }
    let (xm, fm) = golden_min(&f, lo, hi, rel_tol, 400);
    if fm <= fx {
        Ok((xm, fm))
    } else {
        Ok((x, fx))
    }
}
