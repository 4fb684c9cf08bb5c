//! Floor decompositions, stretching and multiplicity sequences.

mod plan;

pub use plan::{FloorPlan, PlanElevator, PlanFloor, PlanLeg, Realized};

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::curve::{self_intersections, simplicity, ParametrizedTropicalCurve, PieceId, Point, UnionFind};
use crate::polygon::{slice_profile, SliceProfile, TropicalDegree};
use crate::scalar::{rat, Rational};
use crate::Curve;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FloorError {
    #[error("not floor decomposed: {0}")]
    NotFloorDecomposed(String),
    #[error("elevators {0} and {1} share an x-coordinate")]
    AmbiguousOrder(usize, usize),
    #[error("infeasible gaps: {0}")]
    InfeasibleGaps(String),
    #[error("curve has {0} self-intersections")]
    HasSelfIntersections(usize),
    #[error("elevator {0} skips a floor")]
    NonConsecutiveAdjacency(usize),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("invalid floor plan: {0}")]
    InvalidPlan(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Floor {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub legs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elevator {
    pub piece: PieceId,
    /// `0` for a downward leg.
    pub lower: usize,
    /// `H + 1` for an upward leg.
    pub upper: usize,
    pub weight: i64,
    pub x: Rational,
    pub lower_vertex: Option<usize>,
    pub upper_vertex: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorDecomposition {
    /// Bottom to top; `floors[k]` is `F_{k+1}`.
    pub floors: Vec<Floor>,
    /// Left to right.
    pub elevators: Vec<Elevator>,
    /// Floor index of each vertex.
    pub floor_of: Vec<usize>,
}

impl FloorDecomposition {
    pub fn height(&self) -> usize {
        self.floors.len()
    }
}

pub fn floor_decompose(c: &Curve) -> Result<FloorDecomposition, FloorError> {
    decompose(c, false)
}

pub(crate) fn decompose(c: &Curve, allow_ties: bool) -> Result<FloorDecomposition, FloorError> {
    let n = c.vertex_count();
    for e in 0..c.edge_count() {
        let s = c.edge_slope(e);
        if s.x.abs() > 1 {
            return Err(FloorError::NotFloorDecomposed(format!("edge {e} has slope {s}")));
        }
    }
    for l in 0..c.leg_count() {
        let s = c.leg_slope(l);
        if s.x.abs() > 1 {
            return Err(FloorError::NotFloorDecomposed(format!("leg {l} has slope {s}")));
        }
    }
    let mut uf = UnionFind::new(n);
    for e in 0..c.edge_count() {
        if c.edge_slope(e).x != 0 {
            uf.union(c.edge(e).tail, c.edge(e).head);
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        match roots.iter().position(|&x| x == r) {
            Some(k) => members[k].push(v),
            None => {
                roots.push(r);
                members.push(vec![v]);
            }
        }
    }
    let mut floors: Vec<Floor> = members
        .into_iter()
        .map(|vs| {
            let edges = (0..c.edge_count())
                .filter(|&e| c.edge_slope(e).x != 0 && vs.contains(&c.edge(e).tail))
                .collect();
            let legs = (0..c.leg_count())
                .filter(|&l| c.leg_slope(l).x != 0 && vs.contains(&c.leg_anchor(l)))
                .collect();
            Floor { vertices: vs, edges, legs }
        })
        .collect();
    if let Some(f) = floors.iter().find(|f| f.edges.is_empty() && f.legs.is_empty()) {
        return Err(FloorError::NotFloorDecomposed(format!(
            "vertex {} lies on no floor",
            f.vertices[0]
        )));
    }
    let key = |f: &Floor| {
        let ys = f.vertices.iter().map(|&v| c.position(v).y.clone());
        (ys.clone().min().unwrap(), ys.max().unwrap(), f.vertices[0])
    };
    floors.sort_by_cached_key(key);
    let h = floors.len();
    let mut floor_of = vec![0; n];
    for (k, f) in floors.iter().enumerate() {
        for &v in &f.vertices {
            floor_of[v] = k + 1;
        }
    }
    let mut elevators = Vec::new();
    for e in 0..c.edge_count() {
        let s = c.edge_slope(e);
        if s.x == 0 {
            let (lo, hi) = if s.y > 0 { (c.edge(e).tail, c.edge(e).head) } else { (c.edge(e).head, c.edge(e).tail) };
            elevators.push(Elevator {
                piece: PieceId::Edge(e),
                lower: floor_of[lo],
                upper: floor_of[hi],
                weight: s.y.abs(),
                x: c.position(lo).x.clone(),
                lower_vertex: Some(lo),
                upper_vertex: Some(hi),
            });
        }
    }
    for l in 0..c.leg_count() {
        let s = c.leg_slope(l);
        if s.x == 0 && s.y != 0 {
            let a = c.leg_anchor(l);
            let (lower, upper, lv, uv) =
                if s.y < 0 { (0, floor_of[a], None, Some(a)) } else { (floor_of[a], h + 1, Some(a), None) };
            elevators.push(Elevator {
                piece: PieceId::Leg(l),
                lower,
                upper,
                weight: s.y.abs(),
                x: c.position(a).x.clone(),
                lower_vertex: lv,
                upper_vertex: uv,
            });
        }
    }
    elevators.sort_by(|a, b| a.x.cmp(&b.x).then(a.lower.cmp(&b.lower)).then(a.upper.cmp(&b.upper)));
    if !allow_ties {
        for k in 1..elevators.len() {
            if elevators[k - 1].x == elevators[k].x {
                return Err(FloorError::AmbiguousOrder(k - 1, k));
            }
        }
    }
    Ok(FloorDecomposition { floors, elevators, floor_of })
}

/// Horizontal extent of the vertex set.
pub fn width<S: crate::Scalar>(c: &ParametrizedTropicalCurve<S>) -> S {
    let xs = c.positions().iter().map(|p| &p.x);
    match (xs.clone().min(), xs.max()) {
        (Some(a), Some(b)) => b.clone() - a.clone(),
        _ => S::zero(),
    }
}

/// Smallest vertical distance between vertices on distinct floors.
fn min_floor_clearance(c: &Curve, fd: &FloorDecomposition) -> Option<Rational> {
    let n = c.vertex_count();
    let mut best: Option<Rational> = None;
    for u in 0..n {
        for v in u + 1..n {
            if fd.floor_of[u] != fd.floor_of[v] {
                let d = (c.position(u).y.clone() - c.position(v).y.clone()).abs();
                if best.as_ref().map_or(true, |b| d < *b) {
                    best = Some(d);
                }
            }
        }
    }
    best
}

pub fn is_stretched(c: &Curve, lambda: &Rational) -> bool {
    let Ok(fd) = decompose(c, true) else { return false };
    let bound = lambda.clone() * width(c).max(Rational::one());
    min_floor_clearance(c, &fd).map_or(true, |d| d >= bound)
}

pub fn is_ssfd(c: &Curve, lambda: &Rational) -> bool {
    simplicity(c).is_ok() && floor_decompose(c).is_ok() && is_stretched(c, lambda)
}

/// The stretching constant used throughout: `4·|∇|²`.
pub fn default_lambda(degree: &TropicalDegree) -> Rational {
    let n = degree.len() as i64;
    rat(4 * n * n)
}

/// Vertical clearance between consecutive floors, bottom to top.
pub fn floor_gaps(c: &Curve, fd: &FloorDecomposition) -> Vec<Rational> {
    let ext: Vec<(Rational, Rational)> = fd
        .floors
        .iter()
        .map(|f| {
            let ys = f.vertices.iter().map(|&v| c.position(v).y.clone());
            (ys.clone().min().unwrap(), ys.max().unwrap())
        })
        .collect();
    ext.windows(2).map(|w| w[1].0.clone() - w[0].1.clone()).collect()
}

/// Translates floors vertically so the clearance between `F_r` and `F_{r+1}`
/// is `gaps[r−1]`. Vertex, edge and leg numbering are kept.
pub fn restretch(c: &Curve, gaps: &[Rational]) -> Result<Curve, FloorError> {
    let fd = floor_decompose(c)?;
    let h = fd.height();
    if gaps.len() + 1 != h {
        return Err(FloorError::InfeasibleGaps(format!("{} gaps for {h} floors", gaps.len())));
    }
    if let Some(g) = gaps.iter().find(|g| !g.is_positive()) {
        return Err(FloorError::InfeasibleGaps(format!("gap {g} is not positive")));
    }
    let current = floor_gaps(c, &fd);
    let mut shift = vec![Rational::zero(); h + 1];
    for r in 1..h {
        shift[r + 1] = shift[r].clone() + gaps[r - 1].clone() - current[r - 1].clone();
    }
    let positions: Vec<Point<Rational>> = (0..c.vertex_count())
        .map(|v| {
            let p = c.position(v);
            Point::new(p.x.clone(), p.y.clone() + shift[fd.floor_of[v]].clone())
        })
        .collect();
    let mut edges = Vec::new();
    for e in 0..c.edge_count() {
        let ge = c.edge(e);
        let s = c.edge_slope(e);
        let len = if s.x == 0 {
            let len = (positions[ge.head].y.clone() - positions[ge.tail].y.clone()) / rat(s.y);
            if !len.is_positive() {
                return Err(FloorError::InfeasibleGaps(format!("elevator edge {e} would have length {len}")));
            }
            len
        } else {
            ge.length.clone()
        };
        edges.push((ge.tail, ge.head, len, s));
    }
    let legs = (0..c.leg_count()).map(|l| (c.leg_anchor(l), c.leg_slope(l))).collect();
    let weights = (0..c.vertex_count()).map(|v| c.weight(v)).collect();
    let out = ParametrizedTropicalCurve::new(weights, positions, edges, legs)
        .map_err(|e| FloorError::InfeasibleGaps(e.to_string()))?;
    debug_assert_eq!(
        crate::curve::combinatorial_type(&out),
        crate::curve::combinatorial_type(c)
    );
    Ok(out)
}

/// Separates elevators sharing an x-coordinate: the i-th elevator from the
/// left moves right by `i·ε`, `ε = 1/(2·|E|·D)` with `D` the common
/// denominator of the x-coordinates.
pub fn perturb_elevators(c: &Curve) -> Result<Curve, FloorError> {
    let mut plan = FloorPlan::from_curve(c, true)?;
    let n = plan.elevators.len().max(1) as i64;
    let mut d = num_bigint::BigInt::one();
    for e in &plan.elevators {
        d = d.lcm(e.x.denom());
    }
    let eps = Rational::new(num_bigint::BigInt::one(), d * num_bigint::BigInt::from(2 * n));
    for (i, e) in plan.elevators.iter_mut().enumerate() {
        e.x = e.x.clone() + eps.clone() * rat(i as i64);
    }
    plan.curve()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicitySequence {
    /// `(r, i, w_{r,i})`, lexicographic in `(r, i)`.
    pub entries: Vec<(usize, usize, i64)>,
    /// `j_r` for `r = 0..=H`.
    pub j: Vec<usize>,
}

impl MultiplicitySequence {
    pub fn from_layers(layers: &[Vec<i64>]) -> Self {
        let entries = layers
            .iter()
            .enumerate()
            .flat_map(|(r, ws)| ws.iter().enumerate().map(move |(i, &w)| (r, i, w)))
            .collect();
        MultiplicitySequence { entries, j: layers.iter().map(Vec::len).collect() }
    }

    pub fn weights(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.2).collect()
    }

    pub fn layer(&self, r: usize) -> Vec<i64> {
        self.entries.iter().filter(|e| e.0 == r).map(|e| e.2).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ_{r=1}^{H−1} (j_r − 1)`.
    pub fn genus(&self) -> i64 {
        let h = self.j.len().saturating_sub(1);
        (1..h).map(|r| self.j[r] as i64 - 1).sum()
    }
}

impl PartialOrd for MultiplicitySequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiplicitySequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weights().cmp(&other.weights()).then_with(|| self.j.cmp(&other.j))
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights().iter().map(i64::to_string).collect();
        write!(f, "({})", ws.join(","))
    }
}

fn profile_of(c: &Curve) -> Result<SliceProfile, FloorError> {
    let p = c
        .degree()
        .dual_polygon()
        .ok_or_else(|| FloorError::Inconsistent("degree has no dual polygon".into()))?;
    slice_profile(&p).map_err(|e| FloorError::Inconsistent(e.to_string()))
}

pub fn multiplicity_sequence(fd: &FloorDecomposition, c: &Curve) -> Result<MultiplicitySequence, FloorError> {
    let crossings = self_intersections(c).map_err(|e| FloorError::Inconsistent(e.to_string()))?;
    if !crossings.is_empty() {
        return Err(FloorError::HasSelfIntersections(crossings.len()));
    }
    let h = fd.height();
    if let Some(i) = fd.elevators.iter().position(|e| e.upper != e.lower + 1) {
        return Err(FloorError::NonConsecutiveAdjacency(i));
    }
    let layers: Vec<Vec<i64>> = (0..=h)
        .map(|r| fd.elevators.iter().filter(|e| e.lower == r).map(|e| e.weight).collect())
        .collect();
    let seq = MultiplicitySequence::from_layers(&layers);
    let profile = profile_of(c)?;
    if profile.height() != h {
        return Err(FloorError::Inconsistent(format!("{h} floors over a polygon of height {}", profile.height())));
    }
    for (r, ws) in layers.iter().enumerate() {
        let s: i64 = ws.iter().sum();
        if s != profile.a(r) {
            return Err(FloorError::Inconsistent(format!("layer {r} has weight {s}, slice length {}", profile.a(r))));
        }
    }
    if seq.genus() != c.genus() {
        return Err(FloorError::Inconsistent(format!("sequence genus {} ≠ curve genus {}", seq.genus(), c.genus())));
    }
    Ok(seq)
}

/// Length `j_0 + … + j_H` of the multiplicity sequences of genus `g`.
pub fn sequence_length(degree: &TropicalDegree, g: i64, profile: &SliceProfile) -> Result<usize, FloorError> {
    let h = profile.height();
    let down: usize = degree.slopes.iter().filter(|s| s.x == 0 && s.y < 0).count();
    let up: usize = degree.slopes.iter().filter(|s| s.x == 0 && s.y > 0).count();
    let max_g: i64 = (1..h).map(|r| profile.a(r) - 1).sum();
    if g < 0 || g > max_g {
        return Err(FloorError::Inconsistent(format!("genus {g} outside 0..={max_g}")));
    }
    let middle = g + h as i64 - 1;
    Ok(down + up + middle.max(0) as usize)
}
