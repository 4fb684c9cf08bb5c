use super::*;
use crate::curve::{dual_subdivision, self_intersections};
use crate::floors::{floor_decompose, floor_gaps, is_ssfd};
use crate::polygon::{polygon, triangle};

fn trapeze(k: i64, l: i64, n: i64) -> LatticePolygon {
    polygon(&[(0, 0), (0, k), (l, k), (l + k * n, 0)]).unwrap()
}

fn assert_good(c: &Curve, p: &LatticePolygon, g: i64) {
    let lambda = default_lambda(&reduced_dual_degree(p));
    assert!(is_unimodular(c));
    assert!(is_ssfd(c, &lambda));
    assert_eq!(c.genus(), g);
    let fd = floor_decompose(c).unwrap();
    assert!(floor_gaps(c, &fd).iter().all(|gap| *gap > Rational::default()));
    let plan = plan_of(c).unwrap();
    assert_eq!(plan.leg_inversions(true) + plan.leg_inversions(false), 0);
}

#[test]
fn unit_triangle_is_a_line() {
    let c = build_genus0_unimodular(&triangle(1)).unwrap();
    assert_eq!(c.vertex_count(), 1);
    assert_eq!(c.leg_count(), 3);
}

#[test]
fn conic_is_dual_to_four_triangles() {
    let c = build_genus0_unimodular(&triangle(2)).unwrap();
    assert_good(&c, &triangle(2), 0);
    let sub = dual_subdivision(&c, &triangle(2)).unwrap();
    assert_eq!(sub.vertex_cells.len(), 4);
    assert!(sub.crossing_cells.is_empty());
}

#[test]
fn cubic_gains_one_genus_then_stops() {
    let p = triangle(3);
    let c0 = build_genus0_unimodular(&p).unwrap();
    assert_good(&c0, &p, 0);
    assert_eq!(self_intersections(&c0).unwrap().len(), 1);
    let c1 = increase_genus(&c0).unwrap();
    assert_good(&c1, &p, 1);
    assert_eq!(increase_genus(&c1).unwrap_err(), ConstructError::NoCrossing);
    let direct = build_unimodular_ssfd(&p, 1).unwrap();
    assert_eq!(direct, c1);
}

#[test]
fn unit_square() {
    let sq = polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
    let c = build_unimodular_ssfd(&sq, 0).unwrap();
    assert_good(&c, &sq, 0);
    assert_eq!(crate::curve::mikhalkin_multiplicity(&c), Ok(1));
}

#[test]
fn top_side_polygons_are_built_upside_down() {
    let p = polygon(&[(0, 0), (3, 3), (0, 3)]).unwrap();
    assert!(!p.has_bottom_side());
    for g in 0..=1 {
        let c = build_unimodular_ssfd(&p, g).unwrap();
        assert_eq!(c.genus(), g);
        assert!(is_unimodular(&c));
        let mut d = c.degree().slopes;
        d.sort();
        let mut e = reduced_dual_degree(&p).slopes;
        e.sort();
        assert_eq!(d, e);
    }
}

#[test]
fn preconditions() {
    let diamond = polygon(&[(0, 1), (1, 0), (2, 1), (1, 2)]).unwrap();
    assert_eq!(build_genus0_unimodular(&diamond).unwrap_err(), ConstructError::NoHorizontalSide);
    // a_0 = 1 < a_1 - 1 = 2, but upside down a_0 = 3
    let wedge = polygon(&[(1, 0), (2, 0), (3, 1), (0, 1)]).unwrap();
    assert!(is_unimodular(&build_genus0_unimodular(&wedge).unwrap()));
    // a_0 = 1, a_1 = 6 and no top side
    let kite = polygon(&[(0, 0), (1, 0), (3, 1), (0, 2), (-3, 1)]).unwrap();
    assert!(matches!(build_genus0_unimodular(&kite), Err(ConstructError::PreconditionFailed(_))));
    assert_eq!(build_unimodular_ssfd(&triangle(3), 2).unwrap_err(), ConstructError::GenusOutOfRange(2));
}

#[test]
fn genus_ladder_reaches_interior_count() {
    for p in [triangle(4), trapeze(2, 1, 1), trapeze(2, 2, 2)] {
        let top = interior_lattice_count(&p);
        let mut c = build_genus0_unimodular(&p).unwrap();
        for g in 1..=top {
            c = increase_genus(&c).unwrap();
            assert_good(&c, &p, g);
        }
        assert_eq!(increase_genus(&c).unwrap_err(), ConstructError::NoCrossing);
    }
}

#[test]
fn admissibility_fast_path() {
    for g in 0..=1 {
        assert!(check_g_admissible(&triangle(3), g, None).unwrap().is_very());
    }
    assert!(matches!(check_g_admissible(&triangle(3), 2, None).unwrap(), Admissibility::No { .. }));
}
