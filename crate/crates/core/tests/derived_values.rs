//! Worked values checked against brute-force oracles from `common`.

mod common;

use common::{first_root, nearest_distance_hyperbola};
use riskcurves_core::curves::{curve_height_at, offset_point, sample_curve, Hyperbola, Point};
use riskcurves_core::inverse::solve_foot;
use riskcurves_core::levels::{build_family, emit_family_curves, ClassGrid};

const DENSE: usize = 100_000;

fn c9() -> Hyperbola {
    Hyperbola::new(9.0).unwrap()
}

/// `X(x)` of the offset, written out independently of the library.
fn offset_x(c: f64, h: f64, x: f64) -> f64 {
    x + c * h / (c * c + x.powi(4)).sqrt()
}

fn offset_y(c: f64, h: f64, x: f64) -> f64 {
    c / x + h * x * x / (c * c + x.powi(4)).sqrt()
}

#[test]
fn offset_lands_at_step_distance() {
    let p = offset_point(&c9(), 1.089, 0.919).unwrap();
    assert!((p.x - 2.000).abs() < 5e-4, "{p:?}");
    assert!((p.y - 8.385).abs() < 5e-4, "{p:?}");
    let d = nearest_distance_hyperbola(9.0, p.x, p.y, DENSE);
    assert!((d - 0.919).abs() < 1e-4, "oracle distance {d}");
}

#[test]
fn height_at_abscissa_two() {
    let oracle_param = first_root(|x| offset_x(9.0, 0.919, x) - 2.0, 1e-3, 10.0, 10_000);
    let oracle = offset_y(9.0, 0.919, oracle_param);
    // frozen from the oracle above
    assert!((oracle - 8.385_462_5).abs() < 1e-6);
    let y = curve_height_at(&c9(), 0.919, 2.0).unwrap();
    assert!((y - oracle).abs() < 1e-9);
    let d = nearest_distance_hyperbola(9.0, 2.0, y, DENSE);
    assert!((d - 0.919).abs() < 1e-4);
}

#[test]
fn height_of_third_curve_above_probability_three() {
    let oracle_param = first_root(|x| offset_x(9.0, 1.838, x) - 3.0, 1e-3, 10.0, 10_000);
    let oracle = offset_y(9.0, 1.838, oracle_param);
    assert!((oracle - 7.884_880).abs() < 1e-5);
    let y = curve_height_at(&c9(), 1.838, 3.0).unwrap();
    assert!((y - oracle).abs() < 1e-9);

    // (3, 7) sits between C_2 and C_3 of the default family
    let family = build_family(&ClassGrid::default(), 6).unwrap();
    let below = curve_height_at(&c9(), family.h_step(), 3.0).unwrap();
    let above = curve_height_at(&c9(), 2.0 * family.h_step(), 3.0).unwrap();
    assert!(below < 7.0 && 7.0 <= above, "{below} {above}");
}

#[test]
fn foot_far_right() {
    let f = solve_foot(&c9(), 9.0, 3.0).unwrap();
    let q = |x: f64| x.powi(4) - 9.0 * x.powi(3) + 27.0 * x - 81.0;
    let oracle_root = first_root(q, 5.0, 12.0, 1_000);
    assert!((oracle_root - 8.768_998_8).abs() < 1e-6);
    assert!((f.x_foot - oracle_root).abs() < 1e-9);
    // (a - x) sqrt(c² + x⁴) / c at the oracle root
    let oracle_h = (9.0 - oracle_root) * (81.0 + oracle_root.powi(4)).sqrt() / 9.0;
    assert!((oracle_h - 1.987_13).abs() < 1e-5);
    assert!((f.h_signed - oracle_h).abs() < 1e-9, "{f:?}");
    let d = nearest_distance_hyperbola(9.0, 9.0, 3.0, DENSE);
    assert!((d - f.h_signed).abs() < 1e-4);
}

#[test]
fn foot_upper_left() {
    let f = solve_foot(&c9(), 2.0, 7.0).unwrap();
    let q = |x: f64| x.powi(4) - 2.0 * x.powi(3) + 63.0 * x - 81.0;
    let oracle_root = first_root(q, 0.0, 5.0, 1_000);
    assert!((oracle_root - 1.310_343_3).abs() < 1e-6);
    assert!((f.x_foot - oracle_root).abs() < 1e-9);
    assert!((f.h_signed - 0.702).abs() < 1e-3, "{f:?}");
    let d = nearest_distance_hyperbola(9.0, 2.0, 7.0, DENSE);
    assert!((d - f.h_signed).abs() < 1e-4);
}

#[test]
fn folded_offset_vertices_keep_their_distance() {
    let poly = sample_curve(&c9(), 4.595, 0.8, 9.5, 200).unwrap();
    assert!(poly.dropped > 0, "offset beyond the evolute cusp should fold");
    for p in &poly.points {
        let d = nearest_distance_hyperbola(9.0, p.x, p.y, DENSE);
        assert!((d - 4.595).abs() < 1e-4, "{p:?} at distance {d}");
    }
}

#[test]
fn family_curves_keep_their_offsets() {
    let family = build_family(&ClassGrid::default(), 6).unwrap();
    let curves = emit_family_curves(&family, 200, 0.8, 9.5).unwrap();
    let want = [0.0, 0.919, 1.839, 2.758, 3.677, 4.597];
    for (poly, h) in curves.iter().zip(want) {
        assert!((poly.h - h).abs() < 1e-3);
        for p in poly.points.iter().step_by(7) {
            let d = nearest_distance_hyperbola(9.0, p.x, p.y, 20_000);
            assert!((d - poly.h).abs() < 1e-3, "{} {p:?}: {d}", poly.label);
        }
    }
}

#[test]
fn offset_rule_agrees_with_curve_heights() {
    // a lattice point is above C_j iff it is above the sampled height of C_j
    let grid = ClassGrid::default();
    let family = build_family(&grid, 6).unwrap();
    let table = riskcurves_core::levels::level_table(&family, &grid).unwrap();
    let mut compared = 0;
    for cell in table.cells.iter().filter(|c| !c.flagged) {
        let Point { x, y } = cell.point;
        let mut geometric = 1;
        for (j, h) in family.offsets().into_iter().enumerate() {
            match curve_height_at(family.base(), h, x) {
                Ok(height) if y > height => geometric = j + 2,
                Ok(_) => {}
                // the curve does not reach this abscissa: the point is left of it
                Err(riskcurves_core::Error::OutOfRange { .. }) => {}
                Err(e) => panic!("{cell:?}: {e}"),
            }
        }
        assert_eq!(geometric, cell.level, "{cell:?}");
        compared += 1;
    }
    assert!(compared >= 58);
}
