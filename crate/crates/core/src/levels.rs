//! Risk levels from a family of parallel curves.
//!
//! Given a [`ClassGrid`] with probability classes `x_1 < .. < x_m` and impact
//! classes `y_1 < .. < y_n`, the base curve is `xy = c` with `c = x_m y_1`.
//! The diagonal from the origin to `V = (x_m, y_n)` meets the base curve in
//! `B_1`; the normal at `B_1` meets the top impact line `y = y_n` in
//! `B_{r+1}`. The segment `B_1 B_{r+1}` is split into `r` equal steps of
//! length `h_step`, and curve `C_j` is the parallel of the base curve at
//! distance `(j - 1) h_step`. A point belongs to level `L_j` when it lies
//! above `C_{j-1}` and on or below `C_j`; points above `C_r` form `L_{r+1}`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::curves::{normal_line_at, sample_curve, Hyperbola, NormalLine, Point, Polyline};
use crate::inverse::{solve_foot, FootResult};
use crate::{Axis, Error, Result};

/// Slack that puts points lying on a curve into the lower level.
pub const ON_CURVE_SLACK: f64 = 1e-12;

/// Default width of the borderline band, as a fraction of `h_step`.
pub const DEFAULT_BOUNDARY_FRACTION: f64 = 0.02;

/// Default curve count for the 9 x 7 lattice.
pub const DEFAULT_CURVES: usize = 6;

/// Default parameter range used when drawing the family.
pub const DEFAULT_SAMPLE_RANGE: (f64, f64) = (0.8, 9.5);

/// One probability class of the default lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityClass {
    pub class: u8,
    pub frequency: &'static str,
    /// Occurrence probability per functioning hour.
    pub probability: f64,
}

/// Probability classes of the default lattice, rarest first.
pub const PROBABILITY_CLASSES: [ProbabilityClass; 9] = [
    ProbabilityClass { class: 1, frequency: "One event at 20 years", probability: 5e-6 },
    ProbabilityClass { class: 2, frequency: "One event at 2 years", probability: 5e-5 },
    ProbabilityClass { class: 3, frequency: "One event per year", probability: 1e-4 },
    ProbabilityClass { class: 4, frequency: "One event at 6 months", probability: 2e-4 },
    ProbabilityClass { class: 5, frequency: "One event per month", probability: 1.4e-3 },
    ProbabilityClass { class: 6, frequency: "Two events per month", probability: 3e-3 },
    ProbabilityClass { class: 7, frequency: "One event per week", probability: 6e-3 },
    ProbabilityClass { class: 8, frequency: "One event per day", probability: 4e-2 },
    ProbabilityClass { class: 9, frequency: "One event at each hour", probability: 1.0 },
];

/// Impact classes of the default lattice, mildest first.
pub const IMPACT_CLASSES: [&str; 7] = ["insignificant", "very low", "low", "medium", "high", "very high", "critical"];

/// The probability (x) and impact (y) class coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    x_labels: Option<Vec<String>>,
    y_labels: Option<Vec<String>>,
}

fn check_axis(axis: Axis, values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::InvalidGrid { axis, reason: format!("needs at least 2 classes, got {}", values.len()) });
    }
    if let Some(v) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidGrid { axis, reason: format!("coordinate {v} is not a positive finite number") });
    }
    if let Some(w) = values.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid { axis, reason: format!("coordinates not strictly increasing at {} -> {}", w[0], w[1]) });
    }
    Ok(())
}

impl ClassGrid {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        check_axis(Axis::Probability, &xs)?;
        check_axis(Axis::Impact, &ys)?;
        Ok(ClassGrid { xs, ys, x_labels: None, y_labels: None })
    }

    /// Attaches class names; each list must match its axis length.
    pub fn with_labels(mut self, x_labels: Option<Vec<String>>, y_labels: Option<Vec<String>>) -> Result<Self> {
        for (axis, labels, len) in [(Axis::Probability, &x_labels, self.xs.len()), (Axis::Impact, &y_labels, self.ys.len())] {
            if let Some(l) = labels {
                if l.len() != len {
                    return Err(Error::InvalidGrid { axis, reason: format!("{} labels for {} classes", l.len(), len) });
                }
            }
        }
        self.x_labels = x_labels;
        self.y_labels = y_labels;
        Ok(self)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn x_labels(&self) -> Option<&[String]> {
        self.x_labels.as_deref()
    }

    pub fn y_labels(&self) -> Option<&[String]> {
        self.y_labels.as_deref()
    }

    /// Number of probability classes.
    pub fn m(&self) -> usize {
        self.xs.len()
    }

    /// Number of impact classes.
    pub fn n(&self) -> usize {
        self.ys.len()
    }

    /// `V = (x_m, y_n)`.
    pub fn top_corner(&self) -> Point {
        Point::new(self.xs[self.xs.len() - 1], self.ys[self.ys.len() - 1])
    }

    /// The grid with both axes exchanged.
    pub fn transposed(&self) -> ClassGrid {
        ClassGrid {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
            x_labels: self.y_labels.clone(),
            y_labels: self.x_labels.clone(),
        }
    }
}

impl Default for ClassGrid {
    /// Classes 1..=9 by 1..=7 with the standard class names.
    fn default() -> Self {
        ClassGrid {
            xs: (1..=9).map(f64::from).collect(),
            ys: (1..=7).map(f64::from).collect(),
            x_labels: Some(PROBABILITY_CLASSES.iter().map(|p| p.frequency.to_string()).collect()),
            y_labels: Some(IMPACT_CLASSES.iter().map(|s| s.to_string()).collect()),
        }
    }
}

/// `r` parallel curves of risk and their section points.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelFamily {
    base: Hyperbola,
    r: usize,
    h_step: f64,
    /// `B_1 ..= B_{r+1}`.
    section: Vec<Point>,
    /// `R_1 ..= R_r`.
    risk: Vec<f64>,
    normal: NormalLine,
}

impl ParallelFamily {
    pub fn base(&self) -> &Hyperbola {
        &self.base
    }

    /// The base risk value `c = R_1`.
    pub fn c(&self) -> f64 {
        self.base.c()
    }

    /// Number of curves.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of levels, `r + 1`.
    pub fn level_count(&self) -> usize {
        self.r + 1
    }

    pub fn h_step(&self) -> f64 {
        self.h_step
    }

    /// Section points `B_1 ..= B_{r+1}`.
    pub fn section_points(&self) -> &[Point] {
        &self.section
    }

    /// Risk values `R_1 ..= R_r`.
    pub fn risk_values(&self) -> &[f64] {
        &self.risk
    }

    /// Normal of the base curve at `B_1`.
    pub fn normal(&self) -> NormalLine {
        self.normal
    }

    /// Offsets `h_j = (j - 1) h_step` of `C_1 ..= C_r`.
    pub fn offsets(&self) -> Vec<f64> {
        (0..self.r).map(|k| k as f64 * self.h_step).collect()
    }

    /// `‖B_1 B_{r+1}‖`.
    pub fn span(&self) -> f64 {
        self.section[0].distance(self.section[self.r])
    }

    /// Section ratio `k_j = ‖B_1 B_j‖ / ‖B_j B_{r+1}‖ = (j - 1) / (r + 1 - j)`
    /// for `j` in `1..=r`.
    pub fn section_ratio(&self, j: usize) -> Option<f64> {
        (1..=self.r).contains(&j).then(|| (j - 1) as f64 / (self.r + 1 - j) as f64)
    }
}

/// Builds `C_1 ..= C_r` for `grid`.
pub fn build_family(grid: &ClassGrid, r: usize) -> Result<ParallelFamily> {
    if r == 0 {
        return Err(Error::InvalidParameter { name: "r", value: 0.0 });
    }
    let x_m = grid.xs[grid.m() - 1];
    let y_1 = grid.ys[0];
    let y_n = grid.ys[grid.n() - 1];
    let c = x_m * y_1;
    let base = Hyperbola::new(c)?;

    // (OV): y = (y_n / x_m) x meets xy = c on the positive branch
    let b_first = Point::new(x_m * libm::sqrt(y_1 / y_n), libm::sqrt(y_1 * y_n));
    if !(b_first.x.is_finite() && b_first.y.is_finite()) {
        return Err(Error::InvalidGrid { axis: Axis::Probability, reason: "degenerate diagonal intersection".to_string() });
    }
    let normal = normal_line_at(&base, b_first.x)?;
    let b_last = Point::new(normal.x_at(y_n), y_n);
    let h_step = b_first.distance(b_last) / r as f64;

    let (section, mut risk) = section_points(b_first, b_last, r);
    risk[0] = c;
    Ok(ParallelFamily { base, r, h_step, section, risk, normal })
}

/// Splits `B_1 B_{r+1}` into `r` equal parts.
///
/// Returns `B_1 ..= B_{r+1}` and the risk values `R_j = a_j b_j` of
/// `B_1 ..= B_r`. `B_j` is the point dividing the segment in the ratio
/// `k_j = (j - 1) / (r + 1 - j)`, computed as `B_1 + (j - 1)/r (B_{r+1} - B_1)`.
pub fn section_points(first: Point, last: Point, r: usize) -> (Vec<Point>, Vec<f64>) {
    let points: Vec<Point> = (0..=r)
        .map(|k| {
            if k == r {
                return last;
            }
            let t = k as f64 / r as f64;
            Point::new(first.x + t * (last.x - first.x), first.y + t * (last.y - first.y))
        })
        .collect();
    let risk = points[..r].iter().map(|p| p.x * p.y).collect();
    (points, risk)
}

/// Level of a point with signed offset `h`: 1 on or below `C_1`, `j` for
/// `h` in `((j - 2) h_step, (j - 1) h_step]`, and `r + 1` above `C_r`.
pub fn level_for_offset(h: f64, h_step: f64, r: usize) -> usize {
    if h <= ON_CURVE_SLACK {
        return 1;
    }
    let band = libm::ceil(h / h_step - ON_CURVE_SLACK);
    // band >= 1 here; clamp before converting to avoid overflow on huge h
    let band = if band > r as f64 { r } else { band as usize };
    (band + 1).min(r + 1)
}

/// Where a point sits relative to the family.
#[derive(Debug, Clone, PartialEq)]
pub struct PointAssessment {
    pub point: Point,
    pub level: usize,
    /// Signed offset of the point from the base curve.
    pub h: f64,
    /// Distance from `h` to the nearest curve offset `(j - 1) h_step`.
    pub boundary_gap: f64,
    /// Index `j` of the nearest curve `C_j`.
    pub nearest_curve: usize,
    /// Risk values of the curves below and above the point's level.
    pub risk_bracket: (Option<f64>, Option<f64>),
    pub foot: FootResult,
}

/// Signed offset, level and nearest boundary of `p`.
pub fn assess_point(family: &ParallelFamily, p: Point) -> Result<PointAssessment> {
    let foot = solve_foot(&family.base, p.x, p.y)?;
    let h = foot.h_signed;
    let level = level_for_offset(h, family.h_step, family.r);
    let (nearest_curve, boundary_gap) = (0..family.r)
        .map(|k| (k + 1, libm::fabs(h - k as f64 * family.h_step)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((1, libm::fabs(h)));
    let below = (level >= 2).then(|| family.risk[level - 2]);
    let above = (level <= family.r).then(|| family.risk[level - 1]);
    Ok(PointAssessment { point: p, level, h, boundary_gap, nearest_curve, risk_bracket: (below, above), foot })
}

/// Level `1 ..= r + 1` of `p`.
pub fn classify_point(family: &ParallelFamily, p: Point) -> Result<usize> {
    assess_point(family, p).map(|a| a.level)
}

/// One lattice cell of a [`LevelTable`].
#[derive(Debug, Clone, PartialEq)]
pub struct CellAssessment {
    /// Probability class index, from 0.
    pub i: usize,
    /// Impact class index, from 0.
    pub j: usize,
    pub point: Point,
    pub level: usize,
    pub h: f64,
    pub boundary_gap: f64,
    /// Set when `boundary_gap` is below the table tolerance.
    pub flagged: bool,
}

/// Levels of every lattice point.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelTable {
    pub grid: ClassGrid,
    pub r: usize,
    pub h_step: f64,
    /// Absolute width of the borderline band.
    pub tolerance: f64,
    /// Row-major: impact ascending, then probability ascending.
    pub cells: Vec<CellAssessment>,
}

impl LevelTable {
    /// Cell for probability index `i` and impact index `j`.
    pub fn cell(&self, i: usize, j: usize) -> &CellAssessment {
        &self.cells[j * self.grid.m() + i]
    }

    pub fn level(&self, i: usize, j: usize) -> usize {
        self.cell(i, j).level
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CellAssessment> {
        self.cells.iter().filter(|c| c.flagged)
    }
}

/// Classifies every lattice point with the default borderline band.
pub fn level_table(family: &ParallelFamily, grid: &ClassGrid) -> Result<LevelTable> {
    level_table_with_tolerance(family, grid, DEFAULT_BOUNDARY_FRACTION)
}

/// Classifies every lattice point; cells whose offset is within
/// `boundary_fraction * h_step` of a curve are flagged.
pub fn level_table_with_tolerance(family: &ParallelFamily, grid: &ClassGrid, boundary_fraction: f64) -> Result<LevelTable> {
    if !(boundary_fraction >= 0.0 && boundary_fraction.is_finite()) {
        return Err(Error::InvalidParameter { name: "boundary_fraction", value: boundary_fraction });
    }
    let tolerance = boundary_fraction * family.h_step;
    let mut cells = Vec::with_capacity(grid.m() * grid.n());
    for (j, &y) in grid.ys.iter().enumerate() {
        for (i, &x) in grid.xs.iter().enumerate() {
            let a = assess_point(family, Point::new(x, y))?;
            cells.push(CellAssessment {
                i,
                j,
                point: a.point,
                level: a.level,
                h: a.h,
                boundary_gap: a.boundary_gap,
                flagged: a.boundary_gap < tolerance,
            });
        }
    }
    Ok(LevelTable { grid: grid.clone(), r: family.r, h_step: family.h_step, tolerance, cells })
}

/// Samples `C_1 ..= C_r` over the parameter range `[x_lo, x_hi]`.
pub fn emit_family_curves(family: &ParallelFamily, samples_per_curve: usize, x_lo: f64, x_hi: f64) -> Result<Vec<Polyline>> {
    family
        .offsets()
        .into_iter()
        .enumerate()
        .map(|(k, h)| Ok(sample_curve(&family.base, h, x_lo, x_hi, samples_per_curve)?.with_label(format!("C{}", k + 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn default_family() -> ParallelFamily {
        build_family(&ClassGrid::default(), 6).unwrap()
    }

    #[test]
    fn default_grid_shape() {
        let g = ClassGrid::default();
        assert_eq!((g.m(), g.n()), (9, 7));
        assert_eq!(g.x_labels().unwrap()[8], "One event at each hour");
        assert_eq!(g.y_labels().unwrap()[6], "critical");
        assert_eq!(PROBABILITY_CLASSES[4].probability, 1.4e-3);
    }

    #[test]
    fn grid_validation_names_axis() {
        let err = ClassGrid::new(vec![1.0, 2.0], vec![3.0, 3.0]).unwrap_err();
        assert!(matches!(err, Error::InvalidGrid { axis: Axis::Impact, .. }));
        let err = ClassGrid::new(vec![1.0], vec![1.0, 2.0]).unwrap_err();
        assert!(matches!(err, Error::InvalidGrid { axis: Axis::Probability, .. }));
        let err = ClassGrid::new(vec![0.0, 1.0], vec![1.0, 2.0]).unwrap_err();
        assert!(matches!(err, Error::InvalidGrid { axis: Axis::Probability, .. }));
        let err = ClassGrid::new(vec![1.0, 2.0], vec![1.0, 2.0])
            .unwrap()
            .with_labels(Some(vec!["a".into()]), None)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidGrid { axis: Axis::Probability, .. }));
    }

    #[test]
    fn zero_curves_rejected() {
        assert!(build_family(&ClassGrid::default(), 0).is_err());
    }

    #[test]
    fn default_family_geometry() {
        let f = default_family();
        assert_eq!(f.c(), 9.0);
        let b1 = f.section_points()[0];
        assert!((b1.x - 9.0 * libm::sqrt(7.0) / 7.0).abs() < 1e-12);
        assert!((b1.y - libm::sqrt(7.0)).abs() < 1e-12);
        assert!((b1.x * b1.y - 9.0).abs() < 1e-12);
        let b7 = f.section_points()[6];
        assert_eq!(b7.y, 7.0);
        assert!((b7.x - 6.788).abs() < 1e-3);
        assert!((f.span() - 5.5162).abs() < 1e-4);
        assert!((f.h_step() - 0.9194).abs() < 1e-4);
        assert_eq!(f.risk_values()[0], 9.0);
    }

    #[test]
    fn three_curves_use_a_third_of_the_span() {
        let f = build_family(&ClassGrid::default(), 3).unwrap();
        assert!((f.h_step() - 5.516230388771438 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn two_curves_midpoint() {
        let f = build_family(&ClassGrid::default(), 2).unwrap();
        let b = f.section_points();
        assert!((b[1].x - 0.5 * (b[0].x + b[2].x)).abs() < 1e-12);
        assert!((b[1].y - 0.5 * (b[0].y + b[2].y)).abs() < 1e-12);
        assert_eq!(f.section_ratio(2), Some(1.0));
    }

    #[test]
    fn section_ratios_match_interpolation() {
        let f = default_family();
        let b = f.section_points();
        for j in 2..=6 {
            let k = f.section_ratio(j).unwrap();
            let a = (b[0].x + k * b[6].x) / (1.0 + k);
            let bb = (b[0].y + k * b[6].y) / (1.0 + k);
            assert!((a - b[j - 1].x).abs() < 1e-12 && (bb - b[j - 1].y).abs() < 1e-12);
        }
        assert_eq!(f.section_ratio(1), Some(0.0));
        assert_eq!(f.section_ratio(0), None);
        assert_eq!(f.section_ratio(7), None);
    }

    #[test]
    fn symmetric_corner_sits_on_diagonal() {
        let g = ClassGrid::new(vec![1.0, 2.0, 4.0], vec![1.0, 2.0, 4.0]).unwrap();
        let f = build_family(&g, 1).unwrap();
        let b1 = f.section_points()[0];
        assert!((b1.x - b1.y).abs() < 1e-12);
        assert!((f.normal().slope - 1.0).abs() < 1e-12);
    }

    #[test]
    fn offset_to_level() {
        let hs = 1.0;
        assert_eq!(level_for_offset(-3.0, hs, 6), 1);
        assert_eq!(level_for_offset(0.0, hs, 6), 1);
        assert_eq!(level_for_offset(1e-13, hs, 6), 1);
        assert_eq!(level_for_offset(0.5, hs, 6), 2);
        assert_eq!(level_for_offset(1.0, hs, 6), 2);
        assert_eq!(level_for_offset(1.0 + 1e-9, hs, 6), 3);
        assert_eq!(level_for_offset(5.0, hs, 6), 6);
        assert_eq!(level_for_offset(5.01, hs, 6), 7);
        assert_eq!(level_for_offset(1e300, hs, 6), 7);
    }

    #[test]
    fn classify_reference_points() {
        let f = default_family();
        assert_eq!(classify_point(&f, Point::new(9.0, 1.0)).unwrap(), 1);
        assert_eq!(classify_point(&f, Point::new(3.0, 3.0)).unwrap(), 1);
        assert_eq!(classify_point(&f, Point::new(2.0, 7.0)).unwrap(), 2);
        assert_eq!(classify_point(&f, Point::new(7.0, 7.0)).unwrap(), 7);
        assert_eq!(classify_point(&f, Point::new(9.0, 3.0)).unwrap(), 4);
        // borderline: h just above 2 h_step
        let a = assess_point(&f, Point::new(8.0, 3.0)).unwrap();
        assert_eq!(a.level, 4);
        assert!(a.boundary_gap < 0.02 * f.h_step());
    }

    #[test]
    fn risk_bracket_edges() {
        let f = default_family();
        let low = assess_point(&f, Point::new(1.0, 1.0)).unwrap();
        assert_eq!(low.risk_bracket, (None, Some(9.0)));
        let top = assess_point(&f, Point::new(9.0, 7.0)).unwrap();
        assert_eq!(top.risk_bracket.1, None);
        assert_eq!(top.risk_bracket.0, Some(f.risk_values()[5]));
    }

    #[test]
    fn single_curve_splits_on_the_hyperbola() {
        let g = ClassGrid::default();
        let f = build_family(&g, 1).unwrap();
        let t = level_table(&f, &g).unwrap();
        for cell in &t.cells {
            let want = if cell.point.x * cell.point.y <= 9.0 { 1 } else { 2 };
            assert_eq!(cell.level, want, "{:?}", cell.point);
        }
    }

    #[test]
    fn table_is_row_major_by_impact() {
        let g = ClassGrid::default();
        let t = level_table(&default_family(), &g).unwrap();
        assert_eq!(t.cells.len(), 63);
        assert_eq!(t.cells[1].point, Point::new(2.0, 1.0));
        assert_eq!(t.cells[9].point, Point::new(1.0, 2.0));
        assert_eq!(t.cell(7, 2).point, Point::new(8.0, 3.0));
    }

    #[test]
    fn transposed_symmetric_grid_transposes_table() {
        let g = ClassGrid::new(vec![1.0, 2.0, 3.0, 5.0], vec![1.0, 2.5, 4.0, 5.0]).unwrap();
        let gt = g.transposed();
        // both grids share x_m = y_n, so the construction is mirrored
        let t = level_table(&build_family(&g, 3).unwrap(), &g).unwrap();
        let tt = level_table(&build_family(&gt, 3).unwrap(), &gt).unwrap();
        assert_eq!(build_family(&g, 3).unwrap().c(), 5.0);
        assert_eq!(build_family(&gt, 3).unwrap().c(), 5.0);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t.level(i, j), tt.level(j, i));
            }
        }
    }

    #[test]
    fn family_curve_labels_and_offsets() {
        let f = default_family();
        let curves = emit_family_curves(&f, 200, 0.8, 9.5).unwrap();
        assert_eq!(curves.len(), 6);
        assert_eq!(curves[0].label, "C1");
        assert_eq!(curves[5].label, "C6");
        assert_eq!(curves[0].h, 0.0);
        assert!((curves[1].h - 0.919).abs() < 1e-3);
        assert!((curves[5].h - 4.597).abs() < 1e-3);
        let single = emit_family_curves(&build_family(&ClassGrid::default(), 1).unwrap(), 2, 0.8, 9.5).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].points.len(), 2);
    }
}
