//! Plan-level surgery. A session carries the current stretched plan, its
//! realization and the certificate accumulated so far.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::certificate::{Move, MoveCertificate, Side, Step, StepKind};
use super::MoveError;
use crate::curve::{combinatorial_type, is_simple, CombinatorialType, Half};
use crate::floors::{FloorPlan, Realized};
use crate::scalar::{rat, Rational};
use crate::Curve;

pub(crate) struct Session {
    pub plan: FloorPlan,
    pub real: Realized,
    pub ty: CombinatorialType,
    /// Persistent identity of the elevator at each position.
    pub tags: Vec<usize>,
    pub lambda: Rational,
    pub cert: MoveCertificate,
}

/// Normalizes x-coordinates and restretches until the realization is simple.
pub(crate) fn settle(plan: &mut FloorPlan, lambda: &Rational) -> Result<Realized, MoveError> {
    plan.normalize_x();
    let mut last = String::new();
    for attempt in 1..=6i64 {
        plan.restretch(&(lambda.clone() * rat(attempt * attempt)));
        match plan.realize() {
            Ok(r) if is_simple(&r.curve) => return Ok(r),
            Ok(_) => last = "realization is not simple".into(),
            Err(e) => last = e.to_string(),
        }
    }
    Err(MoveError::Internal(format!("cannot restretch plan: {last}")))
}

/// A step whose witness is solved from the type alone.
fn type_step(kind: StepKind, ty: CombinatorialType, mv: Move) -> Result<Step, MoveError> {
    let witness = ty
        .witness::<Rational>()
        .ok_or_else(|| MoveError::Internal("empty stratum in a move".into()))?;
    Ok(Step { kind, ty, witness, mv: Some(mv) })
}

fn wall_step(ty: CombinatorialType, mv: Move) -> Result<Step, MoveError> {
    type_step(StepKind::Wall, ty, mv)
}

fn plan_step(real: &Realized, mv: Move) -> Step {
    Step { kind: StepKind::Nice, ty: combinatorial_type(&real.curve), witness: real.curve.clone(), mv: Some(mv) }
}

/// Result of a single surgery: new plan and the steps after the current one.
struct Outcome {
    plan: FloorPlan,
    real: Realized,
    steps: Vec<Step>,
}

/// The up/down construction on the pair at `i, i+1`.
fn merge_outcome(plan: &FloorPlan, real: &Realized, i: usize, lambda: &Rational) -> Result<Outcome, MoveError> {
    let e = &plan.elevators;
    if i + 1 >= e.len() {
        return Err(MoveError::IndexOutOfRange(i));
    }
    let (a, b) = (&e[i], &e[i + 1]);
    let (up, k) = if a.lower == b.lower && !plan.is_virtual(a.lower) && a.upper != b.upper {
        (true, a.lower)
    } else if a.upper == b.upper && !plan.is_virtual(a.upper) && a.lower != b.lower {
        (false, a.upper)
    } else {
        return Err(MoveError::PreconditionFailed(format!(
            "elevators {i} and {} do not leave a common floor on the same side",
            i + 1
        )));
    };
    let (si, li) = match (up, a.upper < b.upper, a.lower > b.lower) {
        (true, true, _) | (false, _, true) => (i, i + 1),
        _ => (i + 1, i),
    };
    let s_floor = if up { e[si].upper } else { e[si].lower };
    let mut q = plan.clone();
    q.elevators[si].weight += q.elevators[li].weight;
    if up {
        q.elevators[li].lower = s_floor;
    } else {
        q.elevators[li].upper = s_floor;
    }
    let q_real = settle(&mut q, lambda)?;

    let mv = if up { Move::ElevatorUp { index: i } } else { Move::ElevatorDown { index: i } };
    let t0 = combinatorial_type(&real.curve);
    let fe = real.floor_edge[&(k, i)];
    let (tail, head) = (t0.edges[fe].tail, t0.edges[fe].head);
    let w1 = t0.contract(fe).ok_or_else(|| MoveError::Internal("loop floor edge".into()))?;
    let rv = |v: usize| {
        let v = if v == head { tail } else { v };
        if v > head {
            v - 1
        } else {
            v
        }
    };
    let re = |x: usize| if x > fe { x - 1 } else { x };
    let half = |idx: usize| match real.elevator_edge[idx] {
        Some(x) if up => Half::Tail(re(x)),
        Some(x) => Half::Head(re(x)),
        None => Half::Leg(plan.elevators[idx].leg.expect("unbounded elevator is a leg")),
    };
    let theta2 = w1.split_vertex(rv(tail), &[half(si), half(li)]);
    let es = re(real.elevator_edge[si].expect("shorter elevator is bounded"));
    let w3 = theta2.contract(es).ok_or_else(|| MoveError::Internal("loop elevator".into()))?;
    let steps = vec![wall_step(w1, mv)?, type_step(StepKind::Nice, theta2, mv)?, wall_step(w3, mv)?, plan_step(&q_real, mv)];
    Ok(Outcome { plan: q, real: q_real, steps })
}

/// Equal floors, legs and elevators, ignoring heights.
fn same_structure(a: &FloorPlan, b: &FloorPlan) -> bool {
    let key = |p: &FloorPlan| {
        (
            p.floors.iter().map(|f| (f.left, f.right)).collect::<Vec<_>>(),
            p.elevators.iter().map(|e| (e.lower, e.upper, e.weight, e.leg)).collect::<Vec<_>>(),
        )
    };
    key(a) == key(b)
}

impl Session {
    pub fn new(mut plan: FloorPlan, lambda: Rational) -> Result<Session, MoveError> {
        let real = settle(&mut plan, &lambda)?;
        let cert = MoveCertificate::single(real.curve.clone());
        let ty = combinatorial_type(&real.curve);
        let tags = (0..plan.elevators.len()).collect();
        Ok(Session { plan, real, ty, tags, lambda, cert })
    }

    pub fn curve(&self) -> &Curve {
        &self.real.curve
    }

    fn commit(&mut self, out: Outcome) {
        self.plan = out.plan;
        self.ty = combinatorial_type(&out.real.curve);
        self.real = out.real;
        self.cert.steps.extend(out.steps);
    }

    pub fn swap(&mut self, i: usize) -> Result<(), MoveError> {
        let e = &self.plan.elevators;
        if i + 1 >= e.len() {
            return Err(MoveError::IndexOutOfRange(i));
        }
        let (a, b) = (&e[i], &e[i + 1]);
        if a.is_bounded() && b.is_bounded() && a.lower == b.lower && a.upper == b.upper {
            return Err(MoveError::ForbiddenSwap(i));
        }
        let shared = [a.lower, a.upper].into_iter().find(|&r| !self.plan.is_virtual(r) && b.touches(r));
        let mut q = self.plan.clone();
        q.elevators.swap(i, i + 1);
        let q_real = settle(&mut q, &self.lambda)?;
        self.tags.swap(i, i + 1);
        let mv = Move::SwapElevators { index: i };
        let steps = match shared {
            // same stratum; keep the starting witness, refresh a later one
            None if self.cert.steps.len() > 1 => {
                let last = self.cert.steps.pop().expect("nonempty");
                vec![Step { mv: last.mv, ..plan_step(&q_real, mv) }]
            }
            None => Vec::new(),
            Some(r) => {
                let fe = self.real.floor_edge[&(r, i)];
                let w = self.ty.contract(fe).ok_or_else(|| MoveError::Internal("loop floor edge".into()))?;
                vec![wall_step(w, mv)?, plan_step(&q_real, mv)]
            }
        };
        self.commit(Outcome { plan: q, real: q_real, steps });
        Ok(())
    }

    /// Going up (shared floor below) or down (shared floor above) an elevator.
    pub fn merge(&mut self, i: usize) -> Result<(), MoveError> {
        let out = merge_outcome(&self.plan, &self.real, i, &self.lambda)?;
        self.commit(out);
        Ok(())
    }

    /// Inverse of [`Session::merge`]: the elevator of the pair ending on the
    /// shared floor gives up the weight of the other, which is extended
    /// through that floor.
    pub fn split(&mut self, i: usize, up: bool) -> Result<(), MoveError> {
        let e = &self.plan.elevators;
        if i + 1 >= e.len() {
            return Err(MoveError::IndexOutOfRange(i));
        }
        let fits = |m: usize, n: usize| {
            let (m, n) = (&e[m], &e[n]);
            let joined = if up { m.upper == n.lower } else { m.lower == n.upper };
            joined && m.is_bounded() && n.weight < m.weight
        };
        let (mi, ni) = if fits(i, i + 1) {
            (i, i + 1)
        } else if fits(i + 1, i) {
            (i + 1, i)
        } else {
            return Err(MoveError::PreconditionFailed(format!("pair {i} cannot be split")));
        };
        let mut p = self.plan.clone();
        p.elevators[mi].weight -= p.elevators[ni].weight;
        if up {
            p.elevators[ni].lower = p.elevators[mi].lower;
        } else {
            p.elevators[ni].upper = p.elevators[mi].upper;
        }
        let p_real = settle(&mut p, &self.lambda)?;
        let back = merge_outcome(&p, &p_real, i, &self.lambda)?;
        if !same_structure(&back.plan, &self.plan) {
            return Err(MoveError::Internal("split does not invert merge".into()));
        }
        // reverse the merge fragment: [current, W3, Θ2, W1, p]
        let inv = if up { Move::ElevatorUpInverse { index: i } } else { Move::ElevatorDownInverse { index: i } };
        let mut chain: Vec<Step> = back.steps[..3].iter().rev().map(|s| Step { mv: Some(inv), ..s.clone() }).collect();
        chain.push(plan_step(&p_real, inv));
        self.commit(Outcome { plan: p, real: p_real, steps: chain });
        Ok(())
    }

    /// Shrinks the extreme elevator between floors `k` and `k+1` whose legs on
    /// `side` cross, exchanging those legs.
    pub fn merge_legs(&mut self, k: usize, side: Side) -> Result<(), MoveError> {
        let h = self.plan.height();
        if k == 0 || k >= h {
            return Err(MoveError::PreconditionFailed(format!("no floor pair at {k}")));
        }
        let ys = |r: usize| match side {
            Side::Left => self.plan.floor(r).left.slope.y,
            Side::Right => self.plan.floor(r).right.slope.y,
        };
        let delta = ys(k) - ys(k + 1);
        if delta <= 0 {
            return Err(MoveError::PreconditionFailed(format!("legs of floors {k}, {} do not cross", k + 1)));
        }
        let pick = |r: usize| {
            let att = self.plan.attached(r);
            match side {
                Side::Left => att.first().copied(),
                Side::Right => att.last().copied(),
            }
        };
        let idx = match (pick(k), pick(k + 1)) {
            (Some(a), Some(b)) if a == b && self.plan.elevators[a].lower == k && self.plan.elevators[a].upper == k + 1 => a,
            _ => {
                return Err(MoveError::PreconditionFailed(format!(
                    "no extreme elevator between floors {k} and {}",
                    k + 1
                )))
            }
        };
        let mut q = self.plan.clone();
        match side {
            Side::Left => {
                let l = q.floors[k - 1].left;
                q.floors[k - 1].left = q.floors[k].left;
                q.floors[k].left = l;
            }
            Side::Right => {
                let l = q.floors[k - 1].right;
                q.floors[k - 1].right = q.floors[k].right;
                q.floors[k].right = l;
            }
        }
        q.elevators[idx].weight += delta;
        let q_real = settle(&mut q, &self.lambda)?;
        let mv = Move::MergeCrossingLegs { floor: k, side };
        let e = self.real.elevator_edge[idx].expect("bounded");
        let w = self.ty.contract(e).ok_or_else(|| MoveError::Internal("loop elevator".into()))?;
        let steps = vec![wall_step(w, mv)?, plan_step(&q_real, mv)];
        self.commit(Outcome { plan: q, real: q_real, steps });
        Ok(())
    }

    pub fn position(&self, tag: usize) -> usize {
        self.tags.iter().position(|&t| t == tag).expect("known tag")
    }

    /// Bubble-sorts the elevators into `target` (a permutation of tags).
    pub fn reorder(&mut self, target: &[usize]) -> Result<(), MoveError> {
        let rank: HashMap<usize, usize> = target.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        loop {
            let i = (0..self.tags.len().saturating_sub(1)).find(|&i| rank[&self.tags[i]] > rank[&self.tags[i + 1]]);
            match i {
                Some(i) => self.swap(i)?,
                None => return Ok(()),
            }
        }
    }

    fn class(&self, pos: usize) -> Option<(usize, usize)> {
        let e = &self.plan.elevators[pos];
        e.is_bounded().then_some((e.lower, e.upper))
    }

    /// Makes `block` (tags, in this order) contiguous with as little movement
    /// as possible, respecting the fixed order of parallel bounded elevators.
    pub fn arrange(&mut self, block: &[usize]) -> Result<(), MoveError> {
        let n = self.tags.len();
        let in_block: HashMap<usize, usize> = block.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let node = |pos: usize| if in_block.contains_key(&self.tags[pos]) { n } else { pos };
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        let mut indeg = vec![0usize; n + 1];
        let mut last: HashMap<(usize, usize), usize> = HashMap::new();
        for pos in 0..n {
            if let Some(c) = self.class(pos) {
                if let Some(&prev) = last.get(&c) {
                    let (u, v) = (node(prev), node(pos));
                    if u != v {
                        succ[u].push(v);
                        indeg[v] += 1;
                    } else if in_block[&self.tags[prev]] > in_block[&self.tags[pos]] {
                        return Err(MoveError::Internal("block contradicts elevator order".into()));
                    }
                }
                last.insert(c, pos);
            }
        }
        let prio = |u: usize| {
            if u == n {
                (0..n).filter(|&p| node(p) == n).min().unwrap_or(0)
            } else {
                u
            }
        };
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::new();
        let live: Vec<usize> = (0..n).filter(|&p| node(p) != n).chain(std::iter::once(n)).collect();
        for &u in &live {
            if indeg[u] == 0 {
                heap.push(Reverse((prio(u), u)));
            }
        }
        let mut target = Vec::with_capacity(n);
        while let Some(Reverse((_, u))) = heap.pop() {
            if u == n {
                target.extend_from_slice(block);
            } else {
                target.push(self.tags[u]);
            }
            for &v in &succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse((prio(v), v)));
                }
            }
        }
        if target.len() != n {
            return Err(MoveError::Internal("cyclic ordering constraints".into()));
        }
        self.reorder(&target)
    }

    pub fn height(&self) -> usize {
        self.plan.height()
    }
}
