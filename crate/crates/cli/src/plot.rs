//! Emitters for the sampled curve family: CSV rows, JSON, or an SVG chart.

use std::fmt::Write as _;

use riskcurves_core::curves::{Point, Polyline};
use riskcurves_core::levels::{ClassGrid, ParallelFamily};
use serde::Serialize;

use crate::fixed::{self, fmt6};

#[derive(Serialize)]
struct CurveDoc<'a> {
    label: &'a str,
    #[serde(serialize_with = "fixed::serialize")]
    h: f64,
    #[serde(serialize_with = "fixed::serialize")]
    risk: f64,
    dropped: usize,
    #[serde(serialize_with = "fixed::serialize_pairs")]
    points: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct CurvesDoc<'a> {
    curves: Vec<CurveDoc<'a>>,
}

pub fn to_csv(curves: &[Polyline]) -> String {
    let mut out = String::from("curve,x,y\n");
    for c in curves {
        for p in &c.points {
            let _ = writeln!(out, "{},{},{}", c.label, fmt6(p.x), fmt6(p.y));
        }
    }
    out
}

pub fn to_json(family: &ParallelFamily, curves: &[Polyline]) -> String {
    let doc = CurvesDoc {
        curves: curves
            .iter()
            .zip(family.risk_values())
            .map(|(c, &risk)| CurveDoc {
                label: &c.label,
                h: c.h,
                risk,
                dropped: c.dropped,
                points: c.points.iter().map(|p| (p.x, p.y)).collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("finite curve samples");
    s.push('\n');
    s
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;

/// Maps data coordinates to the drawing; each axis has its own scale.
struct Frame {
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn for_grid(grid: &ClassGrid) -> Self {
        let pad = |v: &[f64]| {
            let n = v.len();
            v[n - 1] + (v[n - 1] - v[n - 2])
        };
        Frame { x_max: pad(grid.xs()), y_max: pad(grid.ys()) }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + x / self.x_max * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - y / self.y_max * (HEIGHT - TOP - BOTTOM)
    }
}

/// A standalone SVG 1.1 document with the class grid, one path per curve and
/// a label inside every level band.
pub fn to_svg(family: &ParallelFamily, grid: &ClassGrid, curves: &[Polyline]) -> String {
    let f = Frame::for_grid(grid);
    let (x0, x1, y0, y1) = (f.px(0.0), f.px(f.x_max), f.py(f.y_max), f.py(0.0));
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = fmt6(WIDTH),
        h = fmt6(HEIGHT)
    );
    s.push_str("<title>Parallel curves of risk</title>\n");
    s.push_str(
        "<style>.frame{fill:none;stroke:#000}.grid-x,.grid-y{stroke:#bbb;stroke-width:0.5}\
         .curve{fill:none;stroke:#c0392b;stroke-width:1.5}.level{font:bold 13px sans-serif;fill:#1f4e79}\
         .tick{font:11px sans-serif}</style>\n",
    );
    let _ = writeln!(
        s,
        "<defs><clipPath id=\"plot\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></clipPath></defs>",
        fmt6(x0),
        fmt6(y0),
        fmt6(x1 - x0),
        fmt6(y1 - y0)
    );

    s.push_str("<g class=\"grid\">\n");
    for &x in grid.xs() {
        let _ = writeln!(s, "<line class=\"grid-x\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>", fmt6(f.px(x)), fmt6(y0), fmt6(y1));
    }
    for &y in grid.ys() {
        let _ = writeln!(s, "<line class=\"grid-y\" x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\"/>", fmt6(f.py(y)), fmt6(x0), fmt6(x1));
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"axes\">\n");
    let _ = writeln!(s, "<rect class=\"frame\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>", fmt6(x0), fmt6(y0), fmt6(x1 - x0), fmt6(y1 - y0));
    for (k, &x) in grid.xs().iter().enumerate() {
        let _ = writeln!(s, "<text class=\"tick\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>", fmt6(f.px(x)), fmt6(y1 + 16.0), k + 1);
    }
    for (k, &y) in grid.ys().iter().enumerate() {
        let _ = writeln!(s, "<text class=\"tick\" x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>", fmt6(x0 - 8.0), fmt6(f.py(y) + 4.0), k + 1);
    }
    let _ = writeln!(s, "<text class=\"tick\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">probability</text>", fmt6((x0 + x1) / 2.0), fmt6(HEIGHT - 10.0));
    let _ = writeln!(
        s,
        "<text class=\"tick\" x=\"{0}\" y=\"{1}\" text-anchor=\"middle\" transform=\"rotate(-90 {0} {1})\">impact</text>",
        fmt6(16.0),
        fmt6((y0 + y1) / 2.0)
    );
    s.push_str("</g>\n");

    s.push_str("<g clip-path=\"url(#plot)\">\n");
    for c in curves {
        let mut d = String::new();
        for (k, p) in c.points.iter().enumerate() {
            let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, fmt6(f.px(p.x)), fmt6(f.py(p.y)));
        }
        let _ = writeln!(s, "<path class=\"curve\" id=\"{}\" d=\"{}\"/>", c.label, d);
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"levels\">\n");
    for (j, at) in level_anchors(family).into_iter().enumerate() {
        let _ = writeln!(s, "<text class=\"level\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">L{}</text>", fmt6(f.px(at.x)), fmt6(f.py(at.y)), j + 1);
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// Midpoints of the level bands along the normal through `B_1`; the first
/// sits half a spacing below the base curve.
pub fn level_anchors(family: &ParallelFamily) -> Vec<Point> {
    let b = family.section_points();
    let (first, last) = (b[0], b[b.len() - 1]);
    let span = family.span();
    let (ux, uy) = ((last.x - first.x) / span, (last.y - first.y) / span);
    (1..=family.level_count())
        .map(|j| {
            let t = (j as f64 - 1.5) * family.h_step();
            Point::new(first.x + t * ux, first.y + t * uy)
        })
        .collect()
}
