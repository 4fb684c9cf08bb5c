use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::curve::types_isomorphic;
use crate::polygon::triangle;

fn canonical(d: i64, g: i64) -> Curve {
    let p = triangle(d);
    Engine::default().canonical_curve(&p, &reduced_dual_degree(&p), g).unwrap()
}

fn weights(c: &Curve) -> Vec<(usize, usize, i64)> {
    plan_of(c).unwrap().elevators.iter().map(|e| (e.lower, e.upper, e.weight)).collect()
}

fn assert_valid(cert: &MoveCertificate) {
    let v = verify_certificate(cert);
    assert!(v.ok, "{:?}", v.failure);
}

/// Applies `n` random swaps and splits.
fn wander(c: &Curve, n: usize, rng: &mut ChaCha8Rng) -> Curve {
    let e = Engine::default();
    let mut c = c.clone();
    for _ in 0..n {
        let m = plan_of(&c).unwrap().elevators.len();
        let i = rng.gen_range(0..m - 1);
        let r = match rng.gen_range(0..3) {
            0 => e.swap_elevators(&c, i),
            1 => e.elevator_up_inverse(&c, i),
            _ => e.elevator_down_inverse(&c, i),
        };
        if let Ok((cert, next)) = r {
            assert_valid(&cert);
            assert!(types_isomorphic_unordered(&cert.last().ty, &combinatorial_type(&next)));
            c = next;
        }
    }
    c
}

#[test]
fn canonical_forms() {
    assert_eq!(weights(&canonical(2, 0)), vec![(0, 1, 1), (0, 1, 1), (1, 2, 1)]);
    assert_eq!(weights(&canonical(3, 0)), vec![(0, 1, 1), (0, 1, 1), (0, 1, 1), (1, 2, 2), (2, 3, 1)]);
    assert_eq!(
        weights(&canonical(3, 1)),
        vec![(0, 1, 1), (0, 1, 1), (0, 1, 1), (1, 2, 1), (1, 2, 1), (2, 3, 1)]
    );
    for (d, g) in [(2, 0), (3, 0), (3, 1), (4, 3)] {
        let c = canonical(d, g);
        assert_eq!(c.genus(), g);
        assert!(combinatorial_type(&c).is_nice());
        let t = canonical_type(&triangle(d), g).unwrap();
        assert!(types_isomorphic(&t, &combinatorial_type(&c)));
    }
}

#[test]
fn parallel_bounded_elevators_cannot_swap() {
    assert_eq!(swap_elevators(&canonical(3, 1), 3).unwrap_err(), MoveError::ForbiddenSwap(3));
    assert_eq!(swap_elevators(&canonical(3, 1), 5).unwrap_err(), MoveError::IndexOutOfRange(5));
}

#[test]
fn swap_through_shared_floor_crosses_one_wall() {
    let (cert, c) = swap_elevators(&canonical(3, 0), 2).unwrap();
    assert_valid(&cert);
    assert_eq!(cert.wall_count(), 1);
    assert_eq!(cert.moves(), vec![Move::SwapElevators { index: 2 }; 2]);
    assert_eq!(weights(&c)[2..4], [(1, 2, 2), (0, 1, 1)]);
}

#[test]
fn split_then_merge_round_trips() {
    // (1→2, w 2) and (2→3, w 1): splitting gives (1→2, w 1) and (1→3, w 1)
    let start = canonical(3, 0);
    let (cert, c) = Engine::default().elevator_up_inverse(&start, 3).unwrap();
    assert_valid(&cert);
    assert_eq!(cert.wall_count(), 2);
    assert_eq!(weights(&c)[3..], [(1, 2, 1), (1, 3, 1)]);
    let (back, d) = elevator_up(&c, 3).unwrap();
    assert_valid(&back);
    assert_eq!(back.wall_count(), 2);
    assert!(types_isomorphic(&combinatorial_type(&d), &combinatorial_type(&start)));
}

#[test]
fn elevator_up_adds_weights() {
    // quartic: split (1→2, w 3) against (2→3, w 2)... take any pair of
    // weights 2 and 1 on a common lower floor and merge them
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let c = wander(&canonical(4, 0), 6, &mut rng);
        let plan = plan_of(&c).unwrap();
        let e = &plan.elevators;
        let hit = (0..e.len() - 1).find(|&i| {
            e[i].lower == e[i + 1].lower
                && e[i].upper != e[i + 1].upper
                && e[i].lower != 0
                && [e[i].weight, e[i + 1].weight] == [2, 1]
        });
        if let Some(i) = hit {
            let (cert, d) = elevator_up(&c, i).unwrap();
            assert_valid(&cert);
            assert!(weights(&d).iter().any(|w| w.2 == 3));
            return;
        }
    }
    panic!("no (2, 1) pair found");
}

#[test]
fn wandering_curves_canonicalize() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (d, g) in [(2, 0), (3, 0), (3, 1), (4, 0), (4, 2)] {
        let target = canonical_type(&triangle(d), g).unwrap();
        for _ in 0..4 {
            let c = wander(&canonical(d, g), 8, &mut rng);
            let (cert, out) = canonicalize(&c).unwrap();
            assert_valid(&cert);
            assert_eq!(cert.first().witness, c);
            assert!(types_isomorphic_unordered(&combinatorial_type(&out), &target));
        }
    }
}

#[test]
fn connect_two_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut off = || loop {
        let c = wander(&canonical(3, 1), 10, &mut rng);
        if canonicalize(&c).unwrap().0.wall_count() > 0 {
            return c;
        }
    };
    let (a, b) = (off(), off());
    let cert = connect(&a, &b).unwrap();
    assert_valid(&cert);
    assert_eq!(cert.first().witness, a);
    assert_eq!(cert.last().witness, b);
    assert_eq!(connect(&a, &canonical(3, 0)).unwrap_err(), MoveError::DegreeOrGenusMismatch);
}

#[test]
fn tampering_is_detected() {
    let (mut cert, _) = swap_elevators(&canonical(3, 0), 2).unwrap();
    let wall = cert.steps[1].ty.clone();
    // a wall that does not sit between its neighbours
    let other = swap_elevators(&canonical(3, 1), 2).unwrap().0;
    cert.steps[1].ty = other.steps[1].ty.clone();
    cert.steps[1].witness = other.steps[1].witness.clone();
    let v = verify_certificate(&cert);
    assert!(!v.ok);
    assert_eq!(v.failure.unwrap().reason, "DegreeMismatch");

    cert.steps[1].ty = wall;
    cert.steps.swap(0, 2);
    cert.steps[1].witness = cert.steps[0].witness.clone();
    let v = verify_certificate(&cert);
    assert_eq!(v.failure.unwrap().reason, "WitnessMismatch");

    let short = MoveCertificate { steps: cert.steps[..2].to_vec() };
    assert!(!verify_certificate(&short).ok);
}

#[test]
fn json_round_trip() {
    let (cert, _) = canonicalize(&wander(&canonical(3, 0), 5, &mut ChaCha8Rng::seed_from_u64(3))).unwrap();
    let back = MoveCertificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(back.steps.len(), cert.steps.len());
    assert!(verify_certificate(&back).ok);
}
