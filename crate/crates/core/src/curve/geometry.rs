//! Exact intersections of edge segments and leg rays; simplicity and
//! self-intersections.

use std::collections::HashSet;

use super::{CurveError, ParametrizedTropicalCurve, Point};
use crate::lattice::Slope;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceId {
    Edge(usize),
    Leg(usize),
}

/// Image of an edge (`origin + t·dir`, `t ∈ [0,1]`) or leg (`t ≥ 0`).
#[derive(Clone, Debug)]
pub struct Piece<S> {
    pub id: PieceId,
    pub origin: Point<S>,
    pub dir: (S, S),
    pub ray: bool,
    pub slope: Slope,
    pub ends: (usize, Option<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection<S> {
    None,
    /// Single point with parameters on both pieces.
    Point(Point<S>, S, S),
    Overlap,
}

fn cross<S: Scalar>(a: &(S, S), b: &(S, S)) -> S {
    a.0.clone() * b.1.clone() - a.1.clone() * b.0.clone()
}

fn in_range<S: Scalar>(t: &S, ray: bool) -> bool {
    !t.is_negative() && (ray || *t <= S::one())
}

pub fn intersect_pieces<S: Scalar>(p: &Piece<S>, q: &Piece<S>) -> Intersection<S> {
    let w = (q.origin.x.clone() - p.origin.x.clone(), q.origin.y.clone() - p.origin.y.clone());
    let c = cross(&p.dir, &q.dir);
    if !c.is_zero() {
        let t = cross(&w, &q.dir) / c.clone();
        let u = cross(&w, &p.dir) / c;
        if in_range(&t, p.ray) && in_range(&u, q.ray) {
            let pt = Point::new(
                p.origin.x.clone() + t.clone() * p.dir.0.clone(),
                p.origin.y.clone() + t.clone() * p.dir.1.clone(),
            );
            return Intersection::Point(pt, t, u);
        }
        return Intersection::None;
    }
    if !cross(&w, &p.dir).is_zero() {
        return Intersection::None;
    }
    // collinear: project q's extent onto p's parameter
    let dd = p.dir.0.clone() * p.dir.0.clone() + p.dir.1.clone() * p.dir.1.clone();
    let proj = |x: &S, y: &S| (x.clone() * p.dir.0.clone() + y.clone() * p.dir.1.clone()) / dd.clone();
    let s0 = proj(&w.0, &w.1);
    let step = proj(&q.dir.0, &q.dir.1);
    let (plo, phi) = (S::zero(), if p.ray { None } else { Some(S::one()) });
    let (qlo, qhi) = if q.ray {
        if step.is_positive() {
            (Some(s0.clone()), None)
        } else {
            (None, Some(s0.clone()))
        }
    } else {
        let s1 = s0.clone() + step;
        (Some(s0.clone().min(s1.clone())), Some(s0.max(s1)))
    };
    let lo = match qlo {
        Some(v) => v.max(plo),
        None => plo,
    };
    let hi = match (phi, qhi) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    match hi {
        Some(h) if h < lo => Intersection::None,
        Some(h) if h == lo => {
            let pt = Point::new(
                p.origin.x.clone() + lo.clone() * p.dir.0.clone(),
                p.origin.y.clone() + lo.clone() * p.dir.1.clone(),
            );
            // parameter on q recovered by projection onto q
            let qd = q.dir.0.clone() * q.dir.0.clone() + q.dir.1.clone() * q.dir.1.clone();
            let u = ((pt.x.clone() - q.origin.x.clone()) * q.dir.0.clone()
                + (pt.y.clone() - q.origin.y.clone()) * q.dir.1.clone())
                / qd;
            Intersection::Point(pt, lo, u)
        }
        _ => Intersection::Overlap,
    }
}

impl<S: Scalar> ParametrizedTropicalCurve<S> {
    /// Images of all edges and non-contracted legs.
    pub fn pieces(&self) -> Vec<Piece<S>> {
        let mut out = Vec::new();
        for e in 0..self.edge_count() {
            let g = self.edge(e);
            let a = self.position(g.tail);
            let b = self.position(g.head);
            out.push(Piece {
                id: PieceId::Edge(e),
                origin: a.clone(),
                dir: (b.x.clone() - a.x.clone(), b.y.clone() - a.y.clone()),
                ray: false,
                slope: self.edge_slope(e),
                ends: (g.tail, Some(g.head)),
            });
        }
        for l in 0..self.leg_count() {
            let s = self.leg_slope(l);
            if s.is_zero() {
                continue;
            }
            let a = self.leg_anchor(l);
            out.push(Piece {
                id: PieceId::Leg(l),
                origin: self.position(a).clone(),
                dir: (S::from_i64(s.x), S::from_i64(s.y)),
                ray: true,
                slope: s,
                ends: (a, None),
            });
        }
        out
    }
}

/// A transverse crossing of two pieces away from all vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfIntersection<S> {
    pub point: Point<S>,
    pub a: PieceId,
    pub b: PieceId,
    pub slopes: (Slope, Slope),
}

fn shares_vertex<S>(p: &Piece<S>, q: &Piece<S>) -> bool {
    let pv = [Some(p.ends.0), p.ends.1];
    let qv = [Some(q.ends.0), q.ends.1];
    pv.iter().flatten().any(|v| qv.iter().flatten().any(|w| v == w))
}

/// Checks Mikhalkin simplicity; on success returns the self-intersection points.
pub fn simplicity<S: Scalar>(c: &ParametrizedTropicalCurve<S>) -> Result<Vec<SelfIntersection<S>>, String> {
    for v in 0..c.vertex_count() {
        if c.weight(v) != 0 {
            return Err(format!("vertex {v} has positive weight"));
        }
        let star = c.star(v);
        if star.len() != 3 {
            return Err(format!("vertex {v} is {}-valent", star.len()));
        }
        for (i, (_, a)) in star.iter().enumerate() {
            if a.is_zero() {
                return Err(format!("vertex {v} has a contracted leg"));
            }
            for (_, b) in &star[i + 1..] {
                if a.primitive() == b.primitive() {
                    return Err(format!("vertex {v} has overlapping directions"));
                }
            }
        }
    }
    let mut seen = HashSet::new();
    for v in 0..c.vertex_count() {
        if !seen.insert(c.position(v).clone()) {
            return Err(format!("vertex {v} shares its image with another vertex"));
        }
    }
    let pieces = c.pieces();
    let mut points: Vec<SelfIntersection<S>> = Vec::new();
    let mut at = HashSet::new();
    for (i, p) in pieces.iter().enumerate() {
        for q in &pieces[i + 1..] {
            if shares_vertex(p, q) {
                // non-parallel pieces from a common vertex meet only there
                continue;
            }
            match intersect_pieces(p, q) {
                Intersection::None => {}
                Intersection::Overlap => {
                    return Err(format!("{:?} and {:?} overlap", p.id, q.id));
                }
                Intersection::Point(pt, t, u) => {
                    let interior = |t: &S, ray: bool| t.is_positive() && (ray || *t < S::one());
                    if !interior(&t, p.ray) || !interior(&u, q.ray) {
                        return Err(format!("{:?} passes through a vertex of {:?}", p.id, q.id));
                    }
                    if !at.insert(pt.clone()) {
                        return Err("a point has more than two preimages".into());
                    }
                    points.push(SelfIntersection { point: pt, a: p.id, b: q.id, slopes: (p.slope, q.slope) });
                }
            }
        }
    }
    Ok(points)
}

pub fn is_simple<S: Scalar>(c: &ParametrizedTropicalCurve<S>) -> bool {
    simplicity(c).is_ok()
}

pub fn self_intersections<S: Scalar>(
    c: &ParametrizedTropicalCurve<S>,
) -> Result<Vec<SelfIntersection<S>>, CurveError> {
    simplicity(c).map_err(CurveError::NotSimple)
}

pub fn mikhalkin_multiplicity<S: Scalar>(c: &ParametrizedTropicalCurve<S>) -> Result<u64, CurveError> {
    simplicity(c).map_err(CurveError::NotSimple)?;
    (0..c.vertex_count()).map(|v| c.vertex_multiplicity(v)).product()
}

pub fn is_unimodular<S: Scalar>(c: &ParametrizedTropicalCurve<S>) -> bool {
    let Ok(points) = simplicity(c) else { return false };
    (0..c.vertex_count()).all(|v| c.vertex_multiplicity(v) == Ok(1))
        && points.iter().all(|p| p.slopes.0.det(p.slopes.1).abs() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Vec2;
    use crate::scalar::{rat, Rational};

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::new(x, y)
    }

    fn seg(x0: i64, y0: i64, dx: i64, dy: i64, ray: bool) -> Piece<Rational> {
        Piece {
            id: PieceId::Edge(0),
            origin: Point::new(rat(x0), rat(y0)),
            dir: (rat(dx), rat(dy)),
            ray,
            slope: v(dx, dy),
            ends: (0, None),
        }
    }

    #[test]
    fn crossing_segments() {
        let r = intersect_pieces(&seg(0, 0, 2, 2, false), &seg(0, 2, 2, -2, false));
        assert_eq!(r, Intersection::Point(Point::new(rat(1), rat(1)), crate::scalar::frac(1, 2), crate::scalar::frac(1, 2)));
        assert_eq!(intersect_pieces(&seg(0, 0, 1, 0, false), &seg(0, 1, 1, 0, false)), Intersection::None);
        assert_eq!(intersect_pieces(&seg(0, 0, 2, 0, false), &seg(1, 0, 1, 0, true)), Intersection::Overlap);
        assert!(matches!(
            intersect_pieces(&seg(0, 0, 1, 0, false), &seg(1, 0, 1, 0, true)),
            Intersection::Point(..)
        ));
        assert_eq!(intersect_pieces(&seg(0, 0, 1, 0, false), &seg(3, 0, 1, 0, true)), Intersection::None);
        assert_eq!(intersect_pieces(&seg(0, 0, 1, 0, true), &seg(5, 0, -1, 0, true)), Intersection::Overlap);
    }

    #[test]
    fn overlaid_legs_are_not_simple() {
        // A's upward leg and D's downward leg cover the same segment x = 0
        let c = ParametrizedTropicalCurve::<Rational>::new(
            vec![0, 0, 0],
            vec![Point::origin(), Point::new(rat(1), rat(-1)), Point::new(rat(0), rat(3))],
            vec![(0, 1, rat(1), v(1, -1)), (1, 2, rat(1), v(-1, 4))],
            vec![(0, v(-1, 0)), (0, v(0, 1)), (1, v(2, -5)), (2, v(0, -1)), (2, v(-1, 5))],
        )
        .unwrap();
        let r = simplicity(&c);
        assert!(r.is_err());
    }

    #[test]
    fn transverse_leg_crossing_counts() {
        let c = ParametrizedTropicalCurve::<Rational>::new(
            vec![0, 0],
            vec![Point::origin(), Point::new(rat(1), rat(-1))],
            vec![(0, 1, rat(1), v(1, -1))],
            vec![(0, v(-1, 0)), (0, v(0, 1)), (1, v(1, 0)), (1, v(-1, 1))],
        );
        assert_eq!(c.unwrap_err(), CurveError::Unbalanced(1));
        let c = ParametrizedTropicalCurve::<Rational>::new(
            vec![0, 0],
            vec![Point::origin(), Point::new(rat(1), rat(-1))],
            vec![(0, 1, rat(1), v(1, -1))],
            vec![(0, v(-1, 0)), (0, v(0, 1)), (1, v(1, 0)), (1, v(0, -1))],
        )
        .unwrap();
        assert!(self_intersections(&c).unwrap().is_empty());
        assert!(is_unimodular(&c));
    }
}
