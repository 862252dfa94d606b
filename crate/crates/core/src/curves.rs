//! Base curves of risk and their parallel (offset) curves.
//!
//! A parallel curve at signed distance `h` is traced by moving every point of
//! the base curve a distance `h` along its normal. Positive `h` moves away from
//! the origin (towards higher risk) for the decreasing curves used here.

use alloc::string::String;
use alloc::vec::Vec;

use crate::roots;
use crate::{Error, Result};

/// A point of the probability/impact plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// An explicit base curve `y = f(x)` with a non-vanishing derivative.
pub trait BaseCurve {
    fn value(&self, x: f64) -> f64;

    fn slope(&self, x: f64) -> f64;

    /// Parameter interval as `(lo, hi)`. Either end may be infinite.
    fn domain(&self) -> (f64, f64);

    fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.domain();
        x >= lo && x <= hi
    }

    /// Point at signed normal distance `h` from `(x, f(x))`.
    fn offset_point(&self, x: f64, h: f64) -> Result<OffsetPoint> {
        offset_point_general(self, x, h)
    }
}

/// The hyperbola `x * y = c` restricted to `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperbola {
    c: f64,
}

impl Hyperbola {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter { name: "c", value: c });
        }
        Ok(Hyperbola { c })
    }

    /// The risk constant `c`.
    pub fn c(&self) -> f64 {
        self.c
    }
}

impl BaseCurve for Hyperbola {
    fn value(&self, x: f64) -> f64 {
        self.c / x
    }

    fn slope(&self, x: f64) -> f64 {
        -self.c / (x * x)
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    fn contains(&self, x: f64) -> bool {
        x > 0.0 && x.is_finite()
    }

    fn offset_point(&self, x: f64, h: f64) -> Result<OffsetPoint> {
        offset_point(self, x, h)
    }
}

/// Number of derivative probes used to validate an [`ExplicitCurve`].
const SLOPE_PROBES: usize = 1024;

/// A user supplied curve `y = f(x)` on a closed interval, with derivative `df`.
#[derive(Clone)]
pub struct ExplicitCurve<F, D> {
    f: F,
    df: D,
    lo: f64,
    hi: f64,
}

impl<F, D> ExplicitCurve<F, D>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    /// Builds the curve after probing `df` across `[lo, hi]`: the derivative
    /// must be finite, non-zero and keep a single sign.
    pub fn new(f: F, df: D, lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return Err(Error::InvalidCurve(alloc::format!(
                "domain [{lo}, {hi}] is not a closed positive interval"
            )));
        }
        let mut sign = 0.0;
        for k in 0..=SLOPE_PROBES {
            let x = lo + (hi - lo) * (k as f64 / SLOPE_PROBES as f64);
            let (y, d) = (f(x), df(x));
            if !y.is_finite() || !d.is_finite() {
                return Err(Error::InvalidCurve(alloc::format!("non-finite value at x = {x}")));
            }
            if d == 0.0 || (sign != 0.0 && libm::copysign(1.0, d) != sign) {
                return Err(Error::InvalidCurve(alloc::format!(
                    "derivative vanishes or changes sign near x = {x}"
                )));
            }
            sign = libm::copysign(1.0, d);
        }
        Ok(ExplicitCurve { f, df, lo, hi })
    }
}

impl<F, D> BaseCurve for ExplicitCurve<F, D>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn slope(&self, x: f64) -> f64 {
        (self.df)(x)
    }

    fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
}

impl<F, D> core::fmt::Debug for ExplicitCurve<F, D> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ExplicitCurve").field("lo", &self.lo).field("hi", &self.hi).finish_non_exhaustive()
    }
}

/// A point of a parallel curve together with the base parameter it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffsetPoint {
    /// Abscissa of the source point on the base curve.
    pub param: f64,
    pub x: f64,
    pub y: f64,
    /// Signed offset distance.
    pub h: f64,
}

impl OffsetPoint {
    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// Offset of the hyperbola `xy = c`:
/// `X = x + c h / sqrt(c² + x⁴)`, `Y = c/x + h x² / sqrt(c² + x⁴)`.
pub fn offset_point(curve: &Hyperbola, x: f64, h: f64) -> Result<OffsetPoint> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain { what: "x", value: x });
    }
    if !h.is_finite() {
        return Err(Error::InvalidParameter { name: "h", value: h });
    }
    let c = curve.c;
    let norm = libm::hypot(c, x * x);
    Ok(OffsetPoint { param: x, x: x + c * h / norm, y: c / x + h * x * x / norm, h })
}

/// Offset of an arbitrary explicit curve:
/// `X = x + h |f'| / sqrt(1 + f'²)`, `Y = f(x) - h sgn(f') / sqrt(1 + f'²)`.
pub fn offset_point_general<C: BaseCurve + ?Sized>(curve: &C, x: f64, h: f64) -> Result<OffsetPoint> {
    if !curve.contains(x) {
        return Err(Error::Domain { what: "x", value: x });
    }
    if !h.is_finite() {
        return Err(Error::InvalidParameter { name: "h", value: h });
    }
    let (nx, ny) = unit_normal(curve, x)?;
    Ok(OffsetPoint { param: x, x: x + h * nx, y: curve.value(x) + h * ny, h })
}

/// Unit normal of `curve` at `x`, oriented towards positive offsets.
pub(crate) fn unit_normal<C: BaseCurve + ?Sized>(curve: &C, x: f64) -> Result<(f64, f64)> {
    let d = curve.slope(x);
    if d == 0.0 || !d.is_finite() {
        return Err(Error::SingularNormal { x });
    }
    let len = libm::hypot(1.0, d);
    Ok((libm::fabs(d) / len, -libm::copysign(1.0, d) / len))
}

/// The line `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalLine {
    pub slope: f64,
    pub intercept: f64,
}

impl NormalLine {
    pub fn y_at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }

    /// Abscissa where the line reaches ordinate `y`.
    pub fn x_at(&self, y: f64) -> f64 {
        (y - self.intercept) / self.slope
    }

    /// Signed vertical residual `slope * x - y + intercept` of `p`.
    pub fn residual(&self, p: Point) -> f64 {
        self.slope * p.x - p.y + self.intercept
    }
}

/// Normal of `xy = c` at `x0`: slope `x0² / c` through `(x0, c / x0)`.
pub fn normal_line_at(curve: &Hyperbola, x0: f64) -> Result<NormalLine> {
    if !(x0 > 0.0 && x0.is_finite()) {
        return Err(Error::Domain { what: "x0", value: x0 });
    }
    let slope = x0 * x0 / curve.c;
    Ok(NormalLine { slope, intercept: curve.c / x0 - slope * x0 })
}

/// A sampled parallel curve with strictly increasing abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub label: String,
    pub h: f64,
    pub points: Vec<Point>,
    /// Samples discarded because their abscissa did not increase.
    pub dropped: usize,
}

impl Polyline {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Samples the parallel curve at offset `h` for `n` parameters equally spaced
/// in `[x_lo, x_hi]`.
///
/// Offsets larger than the radius of curvature fold back into a swallowtail.
/// The loop is cut out at the self-intersection of the offset, which is
/// inserted as an extra vertex; every sample inside the loop is dropped and
/// counted, so the abscissae of the result strictly increase.
pub fn sample_curve<C: BaseCurve + ?Sized>(curve: &C, h: f64, x_lo: f64, x_hi: f64, n: usize) -> Result<Polyline> {
    if !(x_lo > 0.0 && x_lo.is_finite()) {
        return Err(Error::Domain { what: "x_lo", value: x_lo });
    }
    if !(x_hi > x_lo && x_hi.is_finite()) {
        return Err(Error::Domain { what: "x_hi", value: x_hi });
    }
    if n < 2 {
        return Err(Error::InvalidParameter { name: "n", value: n as f64 });
    }
    let raw = (0..n)
        .map(|k| {
            let t = if k == n - 1 { x_hi } else { x_lo + (x_hi - x_lo) * (k as f64 / (n - 1) as f64) };
            curve.offset_point(t, h).map(|p| Vertex { param: t, point: p.point(), sampled: true })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut kept: Vec<Vertex> = Vec::with_capacity(n);
    kept.push(raw[0]);
    let mut k = 1;
    while k < n {
        let last = kept[kept.len() - 1].point;
        if raw[k].point.x > last.x {
            kept.push(raw[k]);
            k += 1;
            continue;
        }
        // Folded: skip the backward branch, then follow the forward branch
        // until it crosses the kept part or passes beyond it.
        let mut q = k + 1;
        while q < n && raw[q].point.x <= raw[q - 1].point.x {
            q += 1;
        }
        while q < n {
            if let Some((seg, cut)) = find_crossing(curve, h, &kept, raw[q - 1], raw[q])? {
                kept.truncate(seg + 1);
                kept.push(cut);
                break;
            }
            if raw[q].point.x > kept[kept.len() - 1].point.x {
                break;
            }
            q += 1;
        }
        k = q;
    }

    let sampled = kept.iter().filter(|v| v.sampled).count();
    let dropped = n - sampled;
    if kept.len() < 2 {
        return Err(Error::DegenerateRange { kept: kept.len(), dropped });
    }
    Ok(Polyline { label: String::new(), h, points: kept.into_iter().map(|v| v.point).collect(), dropped })
}

#[derive(Debug, Clone, Copy)]
struct Vertex {
    param: f64,
    point: Point,
    /// `false` for self-intersection vertices inserted by the trimming.
    sampled: bool,
}

const CROSSING_REFINEMENTS: usize = 60;

/// Finds where the segment `a -> b` crosses the kept polyline, scanning kept
/// segments from the right. Returns the index of the kept segment start and
/// the refined crossing vertex.
fn find_crossing<C: BaseCurve + ?Sized>(curve: &C, h: f64, kept: &[Vertex], a: Vertex, b: Vertex) -> Result<Option<(usize, Vertex)>> {
    let left = a.point.x.min(b.point.x);
    for i in (1..kept.len()).rev() {
        let (p, q) = (kept[i - 1], kept[i]);
        if q.point.x < left {
            break;
        }
        if segment_crossing(p.point, q.point, a.point, b.point).is_some() {
            let cut = refine_crossing(curve, h, (p.param, q.param), (a.param, b.param))?;
            return Ok(Some((i - 1, cut)));
        }
    }
    Ok(None)
}

/// Parameters `(s, t)` in `[0, 1]²` with `p + s (q - p) = a + t (b - a)`.
fn segment_crossing(p: Point, q: Point, a: Point, b: Point) -> Option<(f64, f64)> {
    let (rx, ry) = (q.x - p.x, q.y - p.y);
    let (sx, sy) = (b.x - a.x, b.y - a.y);
    let denom = rx * sy - ry * sx;
    if denom == 0.0 {
        return None;
    }
    let (dx, dy) = (a.x - p.x, a.y - p.y);
    let s = (dx * sy - dy * sx) / denom;
    let t = (dx * ry - dy * rx) / denom;
    ((0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t)).then_some((s, t))
}

/// Narrows two crossing chords of the offset curve by halving both parameter
/// intervals until the chords shrink onto the self-intersection.
fn refine_crossing<C: BaseCurve + ?Sized>(curve: &C, h: f64, mut first: (f64, f64), mut second: (f64, f64)) -> Result<Vertex> {
    let at = |t: f64| curve.offset_point(t, h).map(|p| p.point());
    for _ in 0..CROSSING_REFINEMENTS {
        let m1 = 0.5 * (first.0 + first.1);
        let m2 = 0.5 * (second.0 + second.1);
        let mut next = None;
        'search: for u in [(first.0, m1), (m1, first.1)] {
            for v in [(second.0, m2), (m2, second.1)] {
                if segment_crossing(at(u.0)?, at(u.1)?, at(v.0)?, at(v.1)?).is_some() {
                    next = Some((u, v));
                    break 'search;
                }
            }
        }
        match next {
            Some((u, v)) => {
                first = u;
                second = v;
            }
            None => break,
        }
    }
    let (p, q) = (at(first.0)?, at(first.1)?);
    let point = match segment_crossing(p, q, at(second.0)?, at(second.1)?) {
        Some((s, _)) => Point::new(p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)),
        None => Point::new(0.5 * (p.x + q.x), 0.5 * (p.y + q.y)),
    };
    Ok(Vertex { param: 0.5 * (first.0 + first.1), point, sampled: false })
}

const HEIGHT_SCAN_CELLS: usize = 4096;
const HEIGHT_BISECT_WIDTH: f64 = 1e-12;
const HEIGHT_BISECT_ITERS: usize = 200;

/// Ordinate of the parallel curve at offset `h` above the abscissa `x_target`.
///
/// The parameter `x` with `X(x) = x_target` is bracketed by a sign-change scan
/// and refined by bisection. A target reached at several parameters (a
/// self-intersecting offset) is reported as ambiguous.
pub fn curve_height_at(curve: &Hyperbola, h: f64, x_target: f64) -> Result<f64> {
    if !x_target.is_finite() {
        return Err(Error::Domain { what: "x_target", value: x_target });
    }
    if !h.is_finite() {
        return Err(Error::InvalidParameter { name: "h", value: h });
    }
    let c = curve.c;
    let gap = |x: f64| x + c * h / libm::hypot(c, x * x) - x_target;
    // X(x) >= x - |h|, so no parameter beyond this bound can reach the target.
    let hi = x_target + libm::fabs(h) + 1.0;
    let lo = 1e-6;
    if hi <= lo {
        return Err(Error::OutOfRange { target: x_target });
    }
    let brackets = roots::sign_change_brackets(gap, lo, hi, HEIGHT_SCAN_CELLS);
    let params: Vec<f64> = brackets
        .iter()
        .map(|&(a, b)| roots::bisect(gap, a, b, HEIGHT_BISECT_WIDTH, HEIGHT_BISECT_ITERS))
        .collect();
    match params.as_slice() {
        [] => Err(Error::OutOfRange { target: x_target }),
        [x] => Ok(offset_point(curve, *x, h)?.y),
        _ => Err(Error::Ambiguous { target: x_target, candidates: params }),
    }
}
