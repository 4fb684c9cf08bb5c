use super::*;
use crate::curve::types_isomorphic_unordered;
use crate::moves::canonical_type;
use crate::polygon::{polygon, triangle};

fn square() -> LatticePolygon {
    polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
}

#[test]
fn line_has_one_stratum() {
    let types = enumerate_ssfd_types(&triangle(1), 0).unwrap();
    assert_eq!(types.len(), 1);
    assert_eq!(types[0].vertex_count(), 1);
    let (_, g) = wall_adjacency_graph(&triangle(1), 0).unwrap();
    assert!(g.connected && g.adjacency[0].is_empty());
}

#[test]
fn conic_strata() {
    let (strata, audit) = enumerate_ssfd_strata(&triangle(2), 0, None).unwrap();
    assert_eq!(strata.len(), 3);
    assert!(audit.rejected.is_empty());
    for s in &strata {
        assert!(s.ty.is_nice());
        assert!(is_simple(&s.witness));
        assert_eq!(s.multiplicity, 1);
    }
    assert!(wall_graph(&strata.iter().map(|s| s.ty.clone()).collect::<Vec<_>>()).directly_connected);
}

#[test]
fn cubic_genus_one_contains_canonical_type() {
    let types = enumerate_ssfd_types(&triangle(3), 1).unwrap();
    let c = canonical_type(&triangle(3), 1).unwrap();
    assert!(types.iter().any(|t| types_isomorphic_unordered(t, &c)));
    assert!(types.iter().all(|t| t.genus() == 1 && t.is_nice()));
}

#[test]
fn markings() {
    // line: floor and one leg below it
    let d = &floor_diagrams(&triangle(1), 0).unwrap()[0];
    assert_eq!(marking_count(d), 1);
    // the conic has a single diagram with a single marking
    let total: u128 = floor_diagrams(&triangle(2), 0).unwrap().iter().map(marking_count).sum();
    assert_eq!(total, 1);
}

#[test]
fn small_severi_degrees() {
    assert_eq!(severi_degree(&triangle(1), 0), Ok(1));
    assert_eq!(severi_degree(&triangle(2), 0), Ok(1));
    assert_eq!(severi_degree(&triangle(3), 0), Ok(12));
    assert_eq!(severi_degree(&triangle(3), 1), Ok(1));
    assert_eq!(severi_degree(&square(), 0), Ok(1));
    assert_eq!(severi_degree(&triangle(3), 2), Err(EnumError::GenusOutOfRange(2)));
}

#[test]
fn severi_degree_is_reflection_invariant() {
    let trapeze = polygon(&[(0, 0), (0, 2), (1, 2), (3, 0)]).unwrap();
    for p in [triangle(3), trapeze] {
        for g in 0..=interior_lattice_count(&p) {
            assert_eq!(severi_degree(&p, g), severi_degree(&p.reflect_x(), g));
        }
    }
}

#[test]
fn report_serializes() {
    let r = enumeration_report(&triangle(2), 0).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["total_types"], 3);
    assert_eq!(json["severi_degree"], 1);
    assert!(json["wall_graph"]["connected"].as_bool().unwrap());
}
