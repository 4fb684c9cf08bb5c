//! Combinatorial types: graphs with slopes but no lengths or positions.

use std::cmp::Ordering;

use super::{CurveError, ParametrizedTropicalCurve, Point, UnionFind};
use crate::lattice::{Slope, Vec2};
use crate::linalg::{positive_kernel_point, rank};
use crate::polygon::TropicalDegree;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeEdge {
    pub tail: usize,
    pub head: usize,
    pub slope: Slope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeLeg {
    pub anchor: usize,
    pub slope: Slope,
}

/// Half-edge at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Half {
    Tail(usize),
    Head(usize),
    Leg(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialType {
    pub weights: Vec<u32>,
    pub edges: Vec<TypeEdge>,
    pub legs: Vec<TypeLeg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Empty,
    Dim(usize),
}

pub fn combinatorial_type<S: Scalar>(c: &ParametrizedTropicalCurve<S>) -> CombinatorialType {
    CombinatorialType {
        weights: c.graph().weights.clone(),
        edges: (0..c.edge_count())
            .map(|e| TypeEdge { tail: c.edge(e).tail, head: c.edge(e).head, slope: c.edge_slope(e) })
            .collect(),
        legs: (0..c.leg_count())
            .map(|l| TypeLeg { anchor: c.leg_anchor(l), slope: c.leg_slope(l) })
            .collect(),
    }
}

impl CombinatorialType {
    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    /// Outgoing slope at each half-edge of `v`.
    pub fn star(&self, v: usize) -> Vec<(Half, Slope)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.tail == v {
                out.push((Half::Tail(i), e.slope));
            }
            if e.head == v {
                out.push((Half::Head(i), -e.slope));
            }
        }
        for (i, l) in self.legs.iter().enumerate() {
            if l.anchor == v {
                out.push((Half::Leg(i), l.slope));
            }
        }
        out
    }

    pub fn valence(&self, v: usize) -> usize {
        self.star(v).len()
    }

    pub fn is_balanced(&self) -> bool {
        (0..self.vertex_count())
            .all(|v| self.star(v).iter().fold(Vec2::ZERO, |a, &(_, s)| a + s).is_zero())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        n > 0 && (1..n).all(|v| uf.find(v) == uf.find(0))
    }

    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertex_count() as i64
            + 1
            + self.weights.iter().map(|&w| w as i64).sum::<i64>()
    }

    pub fn degree(&self) -> TropicalDegree {
        TropicalDegree::new(self.legs.iter().map(|l| l.slope).filter(|s| !s.is_zero()).collect())
    }

    pub fn is_weightless(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// Product of `|det|` over 3-valent vertices; `None` unless weightless 3-valent.
    pub fn multiplicity(&self) -> Option<u64> {
        let mut m = 1u64;
        for v in 0..self.vertex_count() {
            let st = self.star(v);
            if st.len() != 3 || self.weights[v] != 0 {
                return None;
            }
            m *= st[0].1.det(st[1].1).unsigned_abs();
        }
        Some(m)
    }

    /// Contracts bounded edge `e`; its head is merged into its tail. Edges
    /// after `e` shift down by one, vertices after the head likewise.
    pub fn contract(&self, e: usize) -> Option<CombinatorialType> {
        let TypeEdge { tail, head, .. } = *self.edges.get(e)?;
        if tail == head {
            return None;
        }
        let remap = |v: usize| {
            let v = if v == head { tail } else { v };
            if v > head {
                v - 1
            } else {
                v
            }
        };
        let mut weights = self.weights.clone();
        weights[tail] += weights[head];
        weights.remove(head);
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, x)| TypeEdge { tail: remap(x.tail), head: remap(x.head), slope: x.slope })
            .collect();
        let legs = self
            .legs
            .iter()
            .map(|l| TypeLeg { anchor: remap(l.anchor), slope: l.slope })
            .collect();
        Some(CombinatorialType { weights, edges, legs })
    }

    /// Moves the half-edges `moved` of `v` to a new vertex joined to `v` by a
    /// new edge (appended, tail `v`); its slope is forced by balancing.
    pub fn split_vertex(&self, v: usize, moved: &[Half]) -> CombinatorialType {
        let u = self.vertex_count();
        let mut t = self.clone();
        t.weights.push(0);
        let mut slope = Vec2::ZERO;
        for &(h, s) in &self.star(v) {
            if moved.contains(&h) {
                slope = slope + s;
                match h {
                    Half::Tail(i) => t.edges[i].tail = u,
                    Half::Head(i) => t.edges[i].head = u,
                    Half::Leg(i) => t.legs[i].anchor = u,
                }
            }
        }
        t.edges.push(TypeEdge { tail: v, head: u, slope });
        t
    }

    pub fn mirror_y(&self) -> CombinatorialType {
        let mut t = self.clone();
        for e in &mut t.edges {
            e.slope = e.slope.mirror_y();
        }
        for l in &mut t.legs {
            l.slope = l.slope.mirror_y();
        }
        t
    }

    /// Two rows (x and y) per fundamental cycle: `Σ ±ℓ_e·slope_e = 0`.
    pub fn cycle_matrix<S: Scalar>(&self) -> Vec<Vec<S>> {
        let n = self.vertex_count();
        let m = self.edges.len();
        // displacement from the root as signed tree-edge coefficients
        let mut disp: Vec<Option<Vec<i64>>> = vec![None; n];
        let mut tree = vec![false; m];
        if n == 0 {
            return vec![];
        }
        disp[0] = Some(vec![0; m]);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for (i, e) in self.edges.iter().enumerate() {
                let (w, sign) = if e.tail == v {
                    (e.head, 1)
                } else if e.head == v {
                    (e.tail, -1)
                } else {
                    continue;
                };
                if disp[w].is_none() {
                    let mut d = disp[v].clone().unwrap();
                    d[i] += sign;
                    disp[w] = Some(d);
                    tree[i] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut rows = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if tree[i] {
                continue;
            }
            let (Some(dt), Some(dh)) = (&disp[e.tail], &disp[e.head]) else { continue };
            // disp(tail) + ℓ_i s_i − disp(head) = 0
            let mut coef = vec![0i64; m];
            for f in 0..m {
                coef[f] = dt[f] - dh[f];
            }
            coef[i] += 1;
            for pick in [|s: Slope| s.x, |s: Slope| s.y] {
                rows.push(
                    (0..m)
                        .map(|f| S::from_i64(coef[f] * pick(self.edges[f].slope)))
                        .collect(),
                );
            }
        }
        rows
    }

    pub fn stratum_dimension(&self) -> Dimension {
        if !self.is_connected() || !self.is_balanced() {
            return Dimension::Empty;
        }
        if self.edges.iter().any(|e| e.slope.is_zero()) {
            return Dimension::Empty;
        }
        let a = self.cycle_matrix::<num_rational::BigRational>();
        if positive_kernel_point(&a, self.edges.len()).is_none() {
            return Dimension::Empty;
        }
        Dimension::Dim(2 + self.edges.len() - rank(&a))
    }

    fn expected(&self) -> i64 {
        self.degree().len() as i64 + self.genus() - 1
    }

    pub fn is_nice(&self) -> bool {
        self.is_weightless()
            && (0..self.vertex_count()).all(|v| self.valence(v) == 3)
            && self.stratum_dimension() == Dimension::Dim(self.expected() as usize)
    }

    pub fn four_valent_vertex(&self) -> Option<usize> {
        let four: Vec<_> = (0..self.vertex_count()).filter(|&v| self.valence(v) == 4).collect();
        let rest_ok = (0..self.vertex_count()).all(|v| matches!(self.valence(v), 3 | 4));
        (four.len() == 1 && rest_ok).then(|| four[0])
    }

    pub fn is_simple_wall(&self) -> bool {
        self.is_weightless()
            && self.four_valent_vertex().is_some()
            && self.expected() >= 1
            && self.stratum_dimension() == Dimension::Dim(self.expected() as usize - 1)
    }

    /// A curve of this type with all edge lengths ≥ 1, if the stratum is nonempty.
    pub fn witness<S: Scalar>(&self) -> Option<ParametrizedTropicalCurve<S>> {
        let a = self.cycle_matrix::<S>();
        let lengths = positive_kernel_point(&a, self.edges.len())?;
        self.realize(&lengths)
    }

    /// Places vertices from lengths, rooting vertex 0 at the origin.
    pub fn realize<S: Scalar>(&self, lengths: &[S]) -> Option<ParametrizedTropicalCurve<S>> {
        let n = self.vertex_count();
        let mut pos: Vec<Option<Point<S>>> = vec![None; n];
        pos[0] = Some(Point::origin());
        let mut changed = true;
        while changed {
            changed = false;
            for (i, e) in self.edges.iter().enumerate() {
                match (&pos[e.tail], &pos[e.head]) {
                    (Some(p), None) => {
                        pos[e.head] = Some(p.step(&lengths[i], e.slope));
                        changed = true;
                    }
                    (None, Some(q)) => {
                        pos[e.tail] = Some(q.step(&(-lengths[i].clone()), e.slope));
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let positions: Vec<Point<S>> = pos.into_iter().collect::<Option<_>>()?;
        ParametrizedTropicalCurve::new(
            self.weights.clone(),
            positions,
            self.edges.iter().zip(lengths).map(|(e, l)| (e.tail, e.head, l.clone(), e.slope)).collect(),
            self.legs.iter().map(|l| (l.anchor, l.slope)).collect(),
        )
        .ok()
    }

    /// Canonical encoding: equal iff isomorphic. With `unordered`, legs of equal
    /// slope are interchangeable; otherwise leg indices are part of the label.
    pub fn canonical_form(&self, unordered: bool) -> Vec<i64> {
        let n = self.vertex_count();
        let stars: Vec<Vec<Entry>> = (0..n)
            .map(|v| {
                self.star(v)
                    .into_iter()
                    .map(|(h, s)| match h {
                        Half::Leg(i) => Entry {
                            kind: 0,
                            slope: s,
                            leg: if unordered { -1 } else { i as i64 },
                            nbr: None,
                        },
                        Half::Tail(i) => Entry { kind: 1, slope: s, leg: -1, nbr: Some(self.edges[i].head) },
                        Half::Head(i) => Entry { kind: 1, slope: s, leg: -1, nbr: Some(self.edges[i].tail) },
                    })
                    .collect()
            })
            .collect();
        let sig = |v: usize| {
            let mut k: Vec<(u8, Slope, i64)> = stars[v].iter().map(|e| (e.kind, e.slope, e.leg)).collect();
            k.sort();
            (self.weights[v], k)
        };
        let roots: Vec<usize> = if !unordered && !self.legs.is_empty() {
            vec![self.legs[0].anchor]
        } else {
            let best = (0..n).map(sig).min();
            (0..n).filter(|&v| Some(sig(v)) == best).collect()
        };
        let mut lab = Labeler { weights: &self.weights, stars: &stars, best: None };
        for r in roots {
            let mut label = vec![usize::MAX; n];
            label[r] = 0;
            lab.search(State { label, order: vec![r], tokens: vec![n as i64] }, 0);
        }
        lab.best.unwrap_or_default()
    }
}

#[derive(Clone, Debug)]
struct Entry {
    kind: u8,
    slope: Slope,
    leg: i64,
    nbr: Option<usize>,
}

#[derive(Clone)]
struct State {
    label: Vec<usize>,
    order: Vec<usize>,
    tokens: Vec<i64>,
}

struct Labeler<'a> {
    weights: &'a [u32],
    stars: &'a [Vec<Entry>],
    best: Option<Vec<i64>>,
}

fn prefix_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let k = a.len().min(b.len());
    a[..k].cmp(&b[..k])
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

impl Labeler<'_> {
    fn search(&mut self, st: State, pos: usize) {
        if let Some(b) = &self.best {
            if prefix_cmp(&st.tokens, b) == Ordering::Greater {
                return;
            }
        }
        if pos == st.order.len() {
            if self.best.as_ref().map_or(true, |b| st.tokens < *b) {
                self.best = Some(st.tokens);
            }
            return;
        }
        let v = st.order[pos];
        let mut entries = self.stars[v].clone();
        entries.sort_by(|a, b| (a.kind, a.slope, a.leg).cmp(&(b.kind, b.slope, b.leg)));
        // expand tie groups of entries leading to unlabeled vertices
        let mut states = vec![st];
        let mut i = 0;
        while i < entries.len() {
            let key = (entries[i].kind, entries[i].slope, entries[i].leg);
            let mut j = i;
            while j < entries.len() && (entries[j].kind, entries[j].slope, entries[j].leg) == key {
                j += 1;
            }
            let group = &entries[i..j];
            let mut next = Vec::new();
            for s in states {
                let mut pending: Vec<usize> = Vec::new();
                for e in group {
                    if let Some(w) = e.nbr {
                        if s.label[w] == usize::MAX && !pending.contains(&w) {
                            pending.push(w);
                        }
                    }
                }
                for perm in permutations(&pending) {
                    let mut s2 = s.clone();
                    for w in perm {
                        s2.label[w] = s2.order.len();
                        s2.order.push(w);
                    }
                    next.push(s2);
                }
            }
            states = next;
            i = j;
        }
        for mut s in states {
            let mut recs: Vec<[i64; 5]> = entries
                .iter()
                .map(|e| {
                    [
                        e.kind as i64,
                        e.slope.x,
                        e.slope.y,
                        e.leg,
                        e.nbr.map_or(-1, |w| s.label[w] as i64),
                    ]
                })
                .collect();
            recs.sort();
            s.tokens.push(self.weights[v] as i64);
            s.tokens.push(recs.len() as i64);
            for r in recs {
                s.tokens.extend_from_slice(&r);
            }
            self.search(s, pos + 1);
        }
    }
}

pub fn types_isomorphic(a: &CombinatorialType, b: &CombinatorialType) -> bool {
    quick_match(a, b) && a.canonical_form(false) == b.canonical_form(false)
}

/// Isomorphism that may permute legs of equal slope.
pub fn types_isomorphic_unordered(a: &CombinatorialType, b: &CombinatorialType) -> bool {
    quick_match(a, b) && a.canonical_form(true) == b.canonical_form(true)
}

fn quick_match(a: &CombinatorialType, b: &CombinatorialType) -> bool {
    a.vertex_count() == b.vertex_count() && a.edges.len() == b.edges.len() && a.legs.len() == b.legs.len()
}

pub fn stratum_dimension(t: &CombinatorialType) -> Dimension {
    t.stratum_dimension()
}

pub fn is_nice(t: &CombinatorialType) -> bool {
    t.is_nice()
}

pub fn is_simple_wall(t: &CombinatorialType) -> bool {
    t.is_simple_wall()
}

/// One of the three splittings of a wall's 4-valent vertex.
#[derive(Clone, Debug)]
pub struct WallResolution {
    /// Star positions moved to the new vertex (always includes position 0).
    pub pair: [usize; 2],
    pub new_edge_slope: Slope,
    /// `None` when the new edge would be contracted.
    pub ty: Option<CombinatorialType>,
    pub nice: bool,
}

pub fn wall_resolutions(w: &CombinatorialType) -> Result<Vec<WallResolution>, CurveError> {
    let v = w.four_valent_vertex().ok_or(CurveError::NotAWall)?;
    if !w.is_weightless() {
        return Err(CurveError::NotAWall);
    }
    let star = w.star(v);
    let mut out = Vec::new();
    for k in 1..4 {
        let slope = star[0].1 + star[k].1;
        let ty = (!slope.is_zero()).then(|| w.split_vertex(v, &[star[0].0, star[k].0]));
        let nice = ty.as_ref().is_some_and(|t| t.is_nice());
        out.push(WallResolution { pair: [0, k], new_edge_slope: slope, ty, nice });
    }
    Ok(out)
}
