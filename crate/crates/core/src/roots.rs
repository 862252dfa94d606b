//! Bracketing root finders shared by the curve and inverse modules.

use alloc::vec::Vec;

/// Scans `[lo, hi]` with `subdivisions` equal cells and returns every cell
/// on which `f` changes sign. Grid nodes where `f` is exactly zero come back
/// as degenerate brackets `(x, x)`.
pub(crate) fn sign_change_brackets<F>(f: F, lo: f64, hi: f64, subdivisions: usize) -> Vec<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let mut out = Vec::new();
    let step = (hi - lo) / subdivisions as f64;
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    if f_prev == 0.0 {
        out.push((lo, lo));
    }
    for k in 1..=subdivisions {
        let x = if k == subdivisions { hi } else { lo + step * k as f64 };
        let fx = f(x);
        if fx == 0.0 {
            out.push((x, x));
        } else if f_prev != 0.0 && (f_prev < 0.0) != (fx < 0.0) && f_prev.is_finite() && fx.is_finite() {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}

/// Plain bisection on a sign-change bracket. Stops when the bracket is no
/// wider than `width`, when `f` hits zero, or after `max_iter` halvings.
pub(crate) fn bisect<F>(f: F, mut lo: f64, mut hi: f64, width: f64, max_iter: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    if lo == hi {
        return lo;
    }
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..max_iter {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
