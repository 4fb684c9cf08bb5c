//! Parametrized tropical plane curves with exact coordinates.

mod dual;
mod geometry;
mod io;
mod types;

pub use dual::{dual_subdivision, DualSubdivision};
pub use geometry::{
    intersect_pieces, is_simple, is_unimodular, mikhalkin_multiplicity, self_intersections,
    simplicity, Intersection, Piece, PieceId, SelfIntersection,
};
pub use io::{curve_from_json, curve_to_json, type_from_json, type_to_json, CurveFile, CurveParseError, TypeFile};
pub use types::{
    combinatorial_type, is_nice, is_simple_wall, stratum_dimension, types_isomorphic,
    types_isomorphic_unordered, wall_resolutions, CombinatorialType, Dimension, Half, TypeEdge,
    TypeLeg, WallResolution,
};

use thiserror::Error;

use crate::lattice::{Slope, Vec2};
use crate::polygon::TropicalDegree;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("vertex {0} is not balanced")]
    Unbalanced(usize),
    #[error("edge {0} does not join its endpoints' positions")]
    PositionMismatch(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} violates stability")]
    Unstable(usize),
    #[error("edge {0} has non-positive length")]
    NonPositiveLength(usize),
    #[error("edge {0} is contracted")]
    ContractedEdge(usize),
    #[error("reference to unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("duplicate id {0}")]
    DuplicateId(usize),
    #[error("vertex {0} is not 3-valent and weightless")]
    NotTrivalent(usize),
    #[error("curve is not simple: {0}")]
    NotSimple(String),
    #[error("degree of the curve is not dual to the polygon")]
    DegreeMismatch,
    #[error("type is not a simple wall")]
    NotAWall,
}

/// A point of ℝ² with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(S::zero(), S::zero())
    }

    /// `self + t·v` for an integer direction.
    pub fn step(&self, t: &S, v: Slope) -> Self {
        Point::new(
            self.x.clone() + t.clone() * S::from_i64(v.x),
            self.y.clone() + t.clone() * S::from_i64(v.y),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge<S> {
    pub tail: usize,
    pub head: usize,
    pub length: S,
}

/// Weighted metric graph with ordered legs; vertex ids are indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalGraph<S> {
    pub weights: Vec<u32>,
    pub edges: Vec<GraphEdge<S>>,
    /// Anchor vertex of each leg, in leg order.
    pub legs: Vec<usize>,
}

impl<S> TropicalGraph<S> {
    pub fn valence(&self, v: usize) -> usize {
        let e = self
            .edges
            .iter()
            .map(|e| (e.tail == v) as usize + (e.head == v) as usize)
            .sum::<usize>();
        e + self.legs.iter().filter(|&&a| a == v).count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.weights.len();
        if n == 0 {
            return false;
        }
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        (1..n).all(|v| uf.find(v) == uf.find(0))
    }

    /// `|E| − |V| + 1 + Σ weights` for a connected graph.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.weights.len() as i64
            + 1
            + self.weights.iter().map(|&w| w as i64).sum::<i64>()
    }
}

/// Entry of `Star(v)`: an oriented edge leaving `v`, or a leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarEntry {
    Out(usize),
    In(usize),
    Leg(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrizedTropicalCurve<S> {
    graph: TropicalGraph<S>,
    positions: Vec<Point<S>>,
    edge_slopes: Vec<Slope>,
    leg_slopes: Vec<Slope>,
}

/// Unvalidated curve data with arbitrary ids.
#[derive(Clone, Debug)]
pub struct RawCurve<S> {
    pub vertices: Vec<(usize, u32, Point<S>)>,
    /// `(id, tail, head, length, slope)`
    pub edges: Vec<(usize, usize, usize, S, Slope)>,
    /// `(id, anchor, slope)` in leg order.
    pub legs: Vec<(usize, usize, Slope)>,
}

pub fn validate_curve<S: Scalar>(raw: RawCurve<S>) -> Result<ParametrizedTropicalCurve<S>, CurveError> {
    let mut index = std::collections::HashMap::new();
    for (i, (id, _, _)) in raw.vertices.iter().enumerate() {
        if index.insert(*id, i).is_some() {
            return Err(CurveError::DuplicateId(*id));
        }
    }
    let look = |id: usize| index.get(&id).copied().ok_or(CurveError::UnknownVertex(id));
    let mut edges = Vec::new();
    for (_, t, h, len, s) in raw.edges {
        edges.push((look(t)?, look(h)?, len, s));
    }
    let mut legs = Vec::new();
    for (_, a, s) in raw.legs {
        legs.push((look(a)?, s));
    }
    let (weights, positions): (Vec<_>, Vec<_>) =
        raw.vertices.into_iter().map(|(_, w, p)| (w, p)).unzip();
    ParametrizedTropicalCurve::new(weights, positions, edges, legs)
}

impl<S: Scalar> ParametrizedTropicalCurve<S> {
    /// Builds and validates a curve from dense vertex indices.
    pub fn new(
        weights: Vec<u32>,
        positions: Vec<Point<S>>,
        edges: Vec<(usize, usize, S, Slope)>,
        legs: Vec<(usize, Slope)>,
    ) -> Result<Self, CurveError> {
        let n = weights.len();
        assert_eq!(n, positions.len());
        for &(t, h, _, _) in &edges {
            for v in [t, h] {
                if v >= n {
                    return Err(CurveError::UnknownVertex(v));
                }
            }
        }
        for &(a, _) in &legs {
            if a >= n {
                return Err(CurveError::UnknownVertex(a));
            }
        }
        for (i, (_, _, len, s)) in edges.iter().enumerate() {
            if !len.is_positive() {
                return Err(CurveError::NonPositiveLength(i));
            }
            if s.is_zero() {
                return Err(CurveError::ContractedEdge(i));
            }
        }
        for (i, (t, h, len, s)) in edges.iter().enumerate() {
            if positions[*h] != positions[*t].step(len, *s) {
                return Err(CurveError::PositionMismatch(i));
            }
        }
        let curve = ParametrizedTropicalCurve {
            graph: TropicalGraph {
                weights,
                edges: edges
                    .iter()
                    .map(|(t, h, l, _)| GraphEdge { tail: *t, head: *h, length: l.clone() })
                    .collect(),
                legs: legs.iter().map(|&(a, _)| a).collect(),
            },
            positions,
            edge_slopes: edges.iter().map(|e| e.3).collect(),
            leg_slopes: legs.iter().map(|l| l.1).collect(),
        };
        for v in 0..n {
            let sum = curve.star(v).iter().fold(Vec2::ZERO, |acc, &(_, s)| acc + s);
            if !sum.is_zero() {
                return Err(CurveError::Unbalanced(v));
            }
        }
        if !curve.graph.is_connected() {
            return Err(CurveError::Disconnected);
        }
        for v in 0..n {
            if 2 * curve.graph.weights[v] as usize + curve.graph.valence(v) < 3 {
                return Err(CurveError::Unstable(v));
            }
        }
        Ok(curve)
    }

    pub fn graph(&self) -> &TropicalGraph<S> {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_slopes.len()
    }

    pub fn leg_count(&self) -> usize {
        self.leg_slopes.len()
    }

    pub fn position(&self, v: usize) -> &Point<S> {
        &self.positions[v]
    }

    pub fn positions(&self) -> &[Point<S>] {
        &self.positions
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.graph.weights[v]
    }

    pub fn edge(&self, e: usize) -> &GraphEdge<S> {
        &self.graph.edges[e]
    }

    pub fn edge_slope(&self, e: usize) -> Slope {
        self.edge_slopes[e]
    }

    pub fn leg_anchor(&self, l: usize) -> usize {
        self.graph.legs[l]
    }

    pub fn leg_slope(&self, l: usize) -> Slope {
        self.leg_slopes[l]
    }

    /// Outgoing slopes at `v`; a loop contributes two entries.
    pub fn star(&self, v: usize) -> Vec<(StarEntry, Slope)> {
        let mut out = Vec::new();
        for (i, e) in self.graph.edges.iter().enumerate() {
            if e.tail == v {
                out.push((StarEntry::Out(i), self.edge_slopes[i]));
            }
            if e.head == v {
                out.push((StarEntry::In(i), -self.edge_slopes[i]));
            }
        }
        for (i, &a) in self.graph.legs.iter().enumerate() {
            if a == v {
                out.push((StarEntry::Leg(i), self.leg_slopes[i]));
            }
        }
        out
    }

    pub fn genus(&self) -> i64 {
        self.graph.genus()
    }

    /// Nonzero leg slopes.
    pub fn degree(&self) -> TropicalDegree {
        TropicalDegree::new(self.leg_slopes.iter().copied().filter(|s| !s.is_zero()).collect())
    }

    pub fn contracted_leg_count(&self) -> usize {
        self.leg_slopes.iter().filter(|s| s.is_zero()).count()
    }

    pub fn vertex_multiplicity(&self, v: usize) -> Result<u64, CurveError> {
        let star = self.star(v);
        if star.len() != 3 || self.graph.weights[v] != 0 {
            return Err(CurveError::NotTrivalent(v));
        }
        Ok(star[0].1.det(star[1].1).unsigned_abs())
    }

    /// Same curve moved by `(dx, dy)`.
    pub fn translate(&self, dx: &S, dy: &S) -> Self {
        let mut c = self.clone();
        for p in &mut c.positions {
            p.x = p.x.clone() + dx.clone();
            p.y = p.y.clone() + dy.clone();
        }
        c
    }

    /// Image under `(x, y) ↦ (x, −y)`.
    pub fn mirror_y(&self) -> Self {
        let mut c = self.clone();
        for p in &mut c.positions {
            p.y = -p.y.clone();
        }
        for s in c.edge_slopes.iter_mut().chain(c.leg_slopes.iter_mut()) {
            *s = s.mirror_y();
        }
        c
    }

    /// Image under `(x, y) ↦ (−x, y)`.
    pub fn mirror_x(&self) -> Self {
        let mut c = self.clone();
        for p in &mut c.positions {
            p.x = -p.x.clone();
        }
        for s in c.edge_slopes.iter_mut().chain(c.leg_slopes.iter_mut()) {
            *s = s.mirror_x();
        }
        c
    }

    /// Re-expresses the curve over another exact scalar.
    pub fn convert<T: Scalar>(&self) -> Option<ParametrizedTropicalCurve<T>> {
        let conv = |v: &S| T::from_big(&v.to_big());
        Some(ParametrizedTropicalCurve {
            graph: TropicalGraph {
                weights: self.graph.weights.clone(),
                edges: self
                    .graph
                    .edges
                    .iter()
                    .map(|e| Some(GraphEdge { tail: e.tail, head: e.head, length: conv(&e.length)? }))
                    .collect::<Option<_>>()?,
                legs: self.graph.legs.clone(),
            },
            positions: self
                .positions
                .iter()
                .map(|p| Some(Point::new(conv(&p.x)?, conv(&p.y)?)))
                .collect::<Option<_>>()?,
            edge_slopes: self.edge_slopes.clone(),
            leg_slopes: self.leg_slopes.clone(),
        })
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut v = v;
        while self.parent[v] != r {
            let next = self.parent[v];
            self.parent[v] = r;
            v = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
