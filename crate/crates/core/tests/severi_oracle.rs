mod common;

use common::oracle::severi_oracle;
use common::{square, trapeze};
use tropical_floors::enumeration::severi_degree;
use tropical_floors::polygon::triangle;

#[test]
fn oracle_reproduces_known_counts() {
    assert_eq!(severi_oracle(&triangle(1), 0), 1);
    assert_eq!(severi_oracle(&triangle(2), 0), 1);
    assert_eq!(severi_oracle(&triangle(3), 1), 1);
    assert_eq!(severi_oracle(&triangle(3), 0), 12);
    assert_eq!(severi_oracle(&square(), 0), 1);
}

#[test]
fn engine_matches_oracle() {
    let cases = [
        (triangle(2), 0),
        (triangle(3), 0),
        (triangle(3), 1),
        (square(), 0),
        (trapeze(1, 2, 1), 0),
        (trapeze(2, 1, 1), 0),
        (trapeze(2, 1, 1), 1),
    ];
    for (p, g) in cases {
        assert_eq!(severi_degree(&p, g).unwrap(), severi_oracle(&p, g), "{:?} g={g}", p.vertices());
    }
}
