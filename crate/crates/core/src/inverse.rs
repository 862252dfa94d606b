//! Foot of the normal through a point and its signed offset distance.
//!
//! For the hyperbola `xy = c`, eliminating `h` from the offset equations
//! through `N(a, b)` leaves the quartic `x⁴ - a x³ + b c x - c² = 0`. Every
//! positive real root is the abscissa of a foot of a normal passing through
//! `N`; the root closest to `N` is kept.

use alloc::vec::Vec;

use crate::curves::{unit_normal, BaseCurve, Hyperbola};
use crate::roots;
use crate::{Error, Result};

const SCAN_LO: f64 = 1e-6;
const SCAN_CELLS: usize = 2048;
const BISECT_WIDTH: f64 = 1e-13;
const BISECT_ITERS: usize = 400;

/// Foot of the normal through a point.
#[derive(Debug, Clone, PartialEq)]
pub struct FootResult {
    /// Abscissa of the foot on the base curve.
    pub x_foot: f64,
    /// Signed normal distance; positive above the curve.
    pub h_signed: f64,
    /// Scaled residual of the foot condition at `x_foot`.
    pub residual: f64,
    /// Every foot found, in increasing order.
    pub roots: Vec<f64>,
}

impl FootResult {
    /// `true` when more than one normal of the curve passes through the point.
    pub fn has_multiple_roots(&self) -> bool {
        self.roots.len() > 1
    }
}

/// Coefficients of `x⁴ - a x³ + b c x - c²` in descending powers.
pub fn quartic_coefficients(a: f64, b: f64, c: f64) -> Result<[f64; 5]> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter { name: "c", value: c });
    }
    Ok([1.0, -a, 0.0, b * c, -c * c])
}

fn horner(coeffs: &[f64; 5], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &k| acc * x + k)
}

/// Rounding bound of [`horner`] at `x`.
fn horner_noise(coeffs: &[f64; 5], x: f64) -> f64 {
    let ax = libm::fabs(x);
    8.0 * f64::EPSILON * coeffs.iter().fold(0.0, |acc, &k| acc * ax + libm::fabs(k))
}

/// Bisection loses accuracy at a multiple root, where the quartic stays
/// below its rounding noise over a whole interval. If a root of `q''` or `q'`
/// lies in that interval it is the multiple root, so move there.
fn polish_multiple(coeffs: &[f64; 5], x: f64) -> f64 {
    let [_, k3, _, k1, _] = *coeffs;
    let window = 1e-4 * x.max(1.0);
    let flat = |z: f64| libm::fabs(z - x) <= window && libm::fabs(horner(coeffs, z)) <= horner_noise(coeffs, z);
    // q'' = 12x² + 6 k3 x
    let z2 = -k3 / 2.0;
    if z2 > 0.0 && flat(z2) {
        return z2;
    }
    let dq = |z: f64| (4.0 * z + 3.0 * k3) * z * z + k1;
    for (lo, hi) in roots::sign_change_brackets(dq, (x - window).max(SCAN_LO), x + window, 64) {
        let z1 = roots::bisect(dq, lo, hi, BISECT_WIDTH, BISECT_ITERS);
        if flat(z1) {
            return z1;
        }
    }
    x
}

/// Foot of the normal from `(a, b)` onto `xy = c` and the signed distance.
///
/// Positive roots of the foot quartic are bracketed on `[1e-6, a + c + 10]`
/// and bisected; among them the one giving the smallest `|h|` is returned.
pub fn solve_foot(curve: &Hyperbola, a: f64, b: f64) -> Result<FootResult> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain { what: "a", value: a });
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::Domain { what: "b", value: b });
    }
    let c = curve.c();
    let coeffs = quartic_coefficients(a, b, c)?;
    let scale = coeffs.iter().fold(1.0_f64, |m, k| m.max(libm::fabs(*k)));
    let q = |x: f64| horner(&coeffs, x);

    // Beyond a + c + 10 every term of the quartic is dominated by x⁴ - a x³ > 0.
    let hi = a + c + 10.0;
    let mut found: Vec<f64> = roots::sign_change_brackets(q, SCAN_LO, hi, SCAN_CELLS)
        .into_iter()
        .map(|(lo, hi)| polish_multiple(&coeffs, roots::bisect(q, lo, hi, BISECT_WIDTH, BISECT_ITERS)))
        .collect();
    found.dedup();

    let signed = |x: f64| {
        // (a - x, b - c/x) projected on the unit normal (c, x²) / sqrt(c² + x⁴)
        let norm = libm::hypot(c, x * x);
        ((a - x) * c + (b - c / x) * x * x) / norm
    };
    let best = found
        .iter()
        .copied()
        .min_by(|&u, &v| libm::fabs(signed(u)).total_cmp(&libm::fabs(signed(v))))
        .ok_or(Error::NoPositiveRoot { a, b })?;

    Ok(FootResult {
        x_foot: best,
        h_signed: signed(best),
        residual: libm::fabs(q(best)) / scale,
        roots: found,
    })
}

/// Foot of the normal from `(a, b)` onto an explicit curve `y = f(x)`.
///
/// Solves `f'(x) (b - f(x)) + (a - x) = 0` over the curve domain; for
/// `f = c/x` this is the foot quartic multiplied by `-1/x³`.
pub fn solve_foot_general<C: BaseCurve + ?Sized>(curve: &C, a: f64, b: f64) -> Result<FootResult> {
    if !a.is_finite() {
        return Err(Error::Domain { what: "a", value: a });
    }
    if !b.is_finite() {
        return Err(Error::Domain { what: "b", value: b });
    }
    let (lo, hi) = curve.domain();
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidCurve(alloc::format!(
            "foot search needs a bounded domain, got [{lo}, {hi}]"
        )));
    }
    let condition = |x: f64| curve.slope(x) * (b - curve.value(x)) + (a - x);
    let found: Vec<f64> = roots::sign_change_brackets(condition, lo, hi, SCAN_CELLS)
        .into_iter()
        .map(|(l, h)| roots::bisect(condition, l, h, BISECT_WIDTH, BISECT_ITERS))
        .collect();

    let mut best: Option<(f64, f64)> = None;
    for &x in &found {
        let (nx, ny) = unit_normal(curve, x)?;
        let h = (a - x) * nx + (b - curve.value(x)) * ny;
        if best.is_none_or(|(_, bh)| libm::fabs(h) < libm::fabs(bh)) {
            best = Some((x, h));
        }
    }
    let (x_foot, h_signed) = best.ok_or(Error::NoFoot { a, b })?;
    let scale = 1.0_f64.max(libm::fabs(a)).max(libm::fabs(b));
    Ok(FootResult { x_foot, h_signed, residual: libm::fabs(condition(x_foot)) / scale, roots: found })
}
