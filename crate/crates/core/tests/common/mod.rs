#![allow(dead_code)]

pub mod oracle;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tropical_floors::curve::{dual_subdivision, is_simple, is_unimodular, self_intersections};
use tropical_floors::enumeration::floor_diagrams;
use tropical_floors::floors::{default_lambda, FloorPlan};
use tropical_floors::moves::{plan_of, verify_certificate, Engine, MoveCertificate, Side};
use tropical_floors::polygon::{
    interior_lattice_count, is_primitive_cell, polygon, reduced_dual_degree, triangle, LatticePolygon,
};
use tropical_floors::{Curve, Rational};

pub fn square() -> LatticePolygon {
    polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
}

pub fn rectangle(w: i64, h: i64) -> LatticePolygon {
    polygon(&[(0, 0), (w, 0), (w, h), (0, h)]).unwrap()
}

/// Hirzebruch trapeze `(0,0),(0,k),(l,k),(l+kn,0)`.
pub fn trapeze(k: i64, l: i64, n: i64) -> LatticePolygon {
    polygon(&[(0, 0), (0, k), (l, k), (l + k * n, 0)]).unwrap()
}

/// The polygon used for the admissibility pattern "g ≠ 1, 2, 3 / g = 4, 5".
pub fn kite() -> LatticePolygon {
    polygon(&[(0, 0), (1, 0), (3, 1), (0, 2), (-3, 1)]).unwrap()
}

/// Polygons and genera feeding the random curve generator.
pub fn pool_specs() -> Vec<(LatticePolygon, i64)> {
    let mut polys = vec![
        triangle(1),
        triangle(2),
        triangle(3),
        square(),
        rectangle(2, 2),
        rectangle(3, 1),
        trapeze(1, 2, 1),
        trapeze(2, 1, 1),
        trapeze(1, 1, 2),
        polygon(&[(0, 0), (0, 1), (2, 1), (3, 0)]).unwrap(),
        polygon(&[(1, 0), (2, 0), (3, 1), (0, 1)]).unwrap(),
        polygon(&[(0, 0), (3, 1), (0, 2)]).unwrap(),
    ]
    .into_iter()
    .flat_map(|p| (0..=interior_lattice_count(&p)).map(move |g| (p.clone(), g)))
    .collect::<Vec<_>>();
    polys.push((triangle(4), 0));
    polys.push((triangle(4), 1));
    polys.push((kite(), 5));
    polys
}

fn diagrams(i: usize) -> Vec<FloorPlan> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<FloorPlan>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&i) {
        return d.clone();
    }
    let (p, g) = &pool_specs()[i];
    let d = floor_diagrams(p, *g).unwrap();
    cache.lock().unwrap().insert(i, d.clone());
    d
}

/// A random small curve: a floor diagram with shuffled elevators, stretched,
/// then possibly reflected. Returns the curve and its dual polygon.
pub fn random_curve(rng: &mut ChaCha8Rng) -> (Curve, LatticePolygon) {
    let specs = pool_specs();
    loop {
        let i = rng.gen_range(0..specs.len());
        let ds = diagrams(i);
        if ds.is_empty() {
            continue;
        }
        let mut plan = ds[rng.gen_range(0..ds.len())].clone();
        plan.elevators.shuffle(rng);
        plan.normalize_x();
        let p = specs[i].0.clone();
        plan.restretch(&default_lambda(&reduced_dual_degree(&p)));
        let c = plan.curve().unwrap();
        let (dx, dy) = (Rational::from_integer(rng.gen_range(-5..5).into()), Rational::from_integer(rng.gen_range(-5..5).into()));
        let c = c.translate(&dx, &dy);
        return match rng.gen_range(0..4) {
            0 => (c.mirror_x(), p.reflect_x()),
            1 => (c.mirror_y(), p.reflect_y()),
            _ => (c, p),
        };
    }
}

/// Unreflected random curve with downward legs, for the move engine.
pub fn random_plan_curve(rng: &mut ChaCha8Rng) -> Curve {
    loop {
        let (c, _) = random_curve(rng);
        if c.degree().count(tropical_floors::Vec2::new(0, -1)) > 0 && plan_of(&c).is_ok() {
            return c;
        }
    }
}

pub fn check_balancing_cycles(c: &Curve) -> Result<(), String> {
    // rebuild positions along a spanning forest; every other edge must close
    let n = c.vertex_count();
    let mut pos: Vec<Option<(Rational, Rational)>> = vec![None; n];
    pos[0] = Some((Rational::default(), Rational::default()));
    let mut tree = vec![false; c.edge_count()];
    let mut changed = true;
    while changed {
        changed = false;
        for e in 0..c.edge_count() {
            let ge = c.edge(e);
            let s = c.edge_slope(e);
            let step = |p: &(Rational, Rational), sign: i64| {
                let l = ge.length.clone() * Rational::from_integer(sign.into());
                (p.0.clone() + l.clone() * Rational::from_integer(s.x.into()), p.1.clone() + l * Rational::from_integer(s.y.into()))
            };
            match (pos[ge.tail].clone(), pos[ge.head].clone()) {
                (Some(p), None) => {
                    pos[ge.head] = Some(step(&p, 1));
                    tree[e] = true;
                    changed = true;
                }
                (None, Some(q)) => {
                    pos[ge.tail] = Some(step(&q, -1));
                    tree[e] = true;
                    changed = true;
                }
                _ => {}
            }
        }
    }
    for e in (0..c.edge_count()).filter(|&e| !tree[e]) {
        let ge = c.edge(e);
        let s = c.edge_slope(e);
        let (t, h) = (pos[ge.tail].clone().unwrap(), pos[ge.head].clone().unwrap());
        let l = ge.length.clone();
        if h.0 - t.0 != l.clone() * Rational::from_integer(s.x.into()) || h.1 - t.1 != l * Rational::from_integer(s.y.into()) {
            return Err(format!("cycle through edge {e} does not close"));
        }
    }
    for v in 0..n {
        let sum = c.star(v).iter().fold(tropical_floors::Vec2::new(0, 0), |acc, s| acc + s.1);
        if sum != tropical_floors::Vec2::new(0, 0) {
            return Err(format!("vertex {v} unbalanced"));
        }
    }
    Ok(())
}

pub fn check_genus_and_pick(c: &Curve, p: &LatticePolygon) -> Result<(), String> {
    let g = c.genus();
    if g != c.edge_count() as i64 - c.vertex_count() as i64 + 1 {
        return Err("genus is not the first Betti number".into());
    }
    let (i, b) = (interior_lattice_count(p), p.boundary_lattice_count());
    if p.double_area() != 2 * i + b - 2 {
        return Err("Pick's formula fails".into());
    }
    if is_unimodular(c) && g + self_intersections(c).unwrap().len() as i64 != i {
        return Err("unimodular curve: genus + crossings ≠ interior count".into());
    }
    Ok(())
}

pub fn check_dual_subdivision(c: &Curve, p: &LatticePolygon) -> Result<(), String> {
    if !is_simple(c) {
        return Err("generated curve is not simple".into());
    }
    let sub = dual_subdivision(c, p).map_err(|e| e.to_string())?;
    let total: i64 = sub.cells.iter().map(|q| q.double_area()).sum();
    if total != p.double_area() {
        return Err(format!("cells cover area {total}/2 of {}/2", p.double_area()));
    }
    if sub.vertex_cells.len() != c.vertex_count() || sub.vertex_cells.iter().any(|&k| sub.cells[k].len() != 3) {
        return Err("triangles do not match vertices".into());
    }
    let crossings = self_intersections(c).unwrap().len();
    if sub.crossing_cells.len() != crossings || sub.crossing_cells.iter().any(|&k| sub.cells[k].len() != 4) {
        return Err("parallelograms do not match self-intersections".into());
    }
    for (v, &k) in sub.vertex_cells.iter().enumerate() {
        if c.vertex_multiplicity(v).unwrap() as i64 != sub.cells[k].double_area() {
            return Err(format!("vertex {v}: multiplicity ≠ twice the dual area"));
        }
    }
    let primitive = sub.cells.iter().all(|q| is_primitive_cell(q).unwrap());
    if primitive != is_unimodular(c) {
        return Err("unimodularity disagrees with primitive cells".into());
    }
    Ok(())
}

fn fluxes(c: &Curve) -> Vec<i64> {
    let plan = plan_of(c).unwrap();
    (0..=plan.height()).map(|r| plan.band_flux(r)).collect()
}

/// Applies a random move; on success the certificate must verify and the
/// band fluxes must be unchanged (leg merges excepted).
pub fn check_random_move(c: &Curve, rng: &mut ChaCha8Rng) -> Result<Option<MoveCertificate>, String> {
    let e = Engine::default();
    let m = plan_of(c).unwrap().elevators.len();
    let h = plan_of(c).unwrap().height();
    if m < 2 {
        return Ok(None);
    }
    let i = rng.gen_range(0..m - 1);
    let kind = rng.gen_range(0..6);
    let r = match kind {
        0 | 1 => e.swap_elevators(c, i),
        2 => e.elevator_up(c, i),
        3 => e.elevator_down(c, i),
        4 => if rng.gen_bool(0.5) { e.elevator_up_inverse(c, i) } else { e.elevator_down_inverse(c, i) },
        _ => {
            let k = rng.gen_range(1..=h.max(1));
            e.merge_crossing_legs(c, k, if rng.gen_bool(0.5) { Side::Left } else { Side::Right })
        }
    };
    let Ok((cert, next)) = r else { return Ok(None) };
    let v = verify_certificate(&cert);
    if !v.ok {
        return Err(format!("certificate fails: {:?}", v.failure));
    }
    if kind != 5 && fluxes(c) != fluxes(&next) {
        return Err("band flux changed".into());
    }
    Ok(Some(cert))
}
