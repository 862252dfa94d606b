//! Independent oracles: dense sampling of the base curve, no root finding.

#![allow(dead_code)]

/// Distance from `(px, py)` to the segment `(ax, ay)-(bx, by)`.
pub fn segment_distance(px: f64, py: f64, ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    let (dx, dy) = (bx - ax, by - ay);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((px - ax) * dx + (py - ay) * dy) / len2).clamp(0.0, 1.0) };
    ((px - ax - t * dx).powi(2) + (py - ay - t * dy).powi(2)).sqrt()
}

/// Nearest distance from a point to `y = f(x)` sampled at `n` parameters
/// from `xs(k)` and joined by segments.
pub fn nearest_distance_to(f: impl Fn(f64) -> f64, xs: impl Fn(usize) -> f64, n: usize, px: f64, py: f64) -> f64 {
    let mut best = f64::INFINITY;
    let (mut ax, mut ay) = (xs(0), f(xs(0)));
    for k in 1..n {
        let bx = xs(k);
        let by = f(bx);
        best = best.min(segment_distance(px, py, ax, ay, bx, by));
        ax = bx;
        ay = by;
    }
    best
}

/// Nearest distance from `(px, py)` to `xy = c`, sampled at `n` points
/// log-spaced symmetrically around `sqrt(c)` over `e^-6 .. e^6`.
pub fn nearest_distance_hyperbola(c: f64, px: f64, py: f64, n: usize) -> f64 {
    let root = c.sqrt();
    let xs = |k: usize| root * (-6.0 + 12.0 * k as f64 / (n - 1) as f64).exp();
    nearest_distance_to(|x| c / x, xs, n, px, py)
}

/// Solves `g(x) = 0` on `[lo, hi]` by sampling `n` points and bisecting the
/// first sign change found; panics when there is none.
pub fn first_root(g: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    let step = (hi - lo) / n as f64;
    for k in 0..n {
        let (mut a, mut b) = (lo + step * k as f64, lo + step * (k + 1) as f64);
        if g(a) * g(b) <= 0.0 {
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if g(a) * g(m) <= 0.0 {
                    b = m
                } else {
                    a = m
                }
            }
            return 0.5 * (a + b);
        }
    }
    panic!("no sign change on [{lo}, {hi}]");
}
