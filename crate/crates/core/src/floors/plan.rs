//! Structured description of a stretched floor-decomposed curve: floors with
//! their legs and heights, plus elevators with x-coordinates.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::curve::{combinatorial_type, CombinatorialType, ParametrizedTropicalCurve, Point};
use crate::lattice::{Slope, Vec2};
use crate::scalar::{rat, Rational};
use crate::Curve;

use super::FloorError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlanLeg {
    pub id: usize,
    pub slope: Slope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanFloor {
    /// Leg of slope `(−1, a)`.
    pub left: PlanLeg,
    /// Leg of slope `(1, c)`.
    pub right: PlanLeg,
    /// Height of the floor above `x = 0`.
    pub base: Rational,
}

/// A vertical edge or leg. Floors are numbered `1..=H`; `0` and `H+1` are the
/// virtual floors at the bottom and top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanElevator {
    pub lower: usize,
    pub upper: usize,
    pub weight: i64,
    pub x: Rational,
    /// Leg id when one end is virtual.
    pub leg: Option<usize>,
}

impl PlanElevator {
    pub fn is_bounded(&self) -> bool {
        self.leg.is_none()
    }

    pub fn touches(&self, r: usize) -> bool {
        self.lower == r || self.upper == r
    }

    /// Floor at the other end from `r`.
    pub fn other(&self, r: usize) -> usize {
        if self.lower == r {
            self.upper
        } else {
            self.lower
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorPlan {
    pub floors: Vec<PlanFloor>,
    /// Sorted by strictly increasing x.
    pub elevators: Vec<PlanElevator>,
}

/// A realized plan with bookkeeping from plan objects to curve indices.
#[derive(Clone, Debug)]
pub struct Realized {
    pub curve: Curve,
    /// `(floor, elevator)` → vertex.
    pub vertex: HashMap<(usize, usize), usize>,
    /// `(floor, elevator at the left end)` → floor edge.
    pub floor_edge: HashMap<(usize, usize), usize>,
    /// Edge of each bounded elevator.
    pub elevator_edge: Vec<Option<usize>>,
}

impl FloorPlan {
    pub fn height(&self) -> usize {
        self.floors.len()
    }

    pub fn floor(&self, r: usize) -> &PlanFloor {
        &self.floors[r - 1]
    }

    /// Elevators touching floor `r`, left to right.
    pub fn attached(&self, r: usize) -> Vec<usize> {
        (0..self.elevators.len()).filter(|&i| self.elevators[i].touches(r)).collect()
    }

    pub fn is_virtual(&self, r: usize) -> bool {
        r == 0 || r == self.height() + 1
    }

    /// Elevators joining `r` and `r+1`, left to right.
    pub fn layer(&self, r: usize) -> Vec<usize> {
        (0..self.elevators.len())
            .filter(|&i| self.elevators[i].lower == r && self.elevators[i].upper == r + 1)
            .collect()
    }

    pub fn bounded_count(&self) -> usize {
        self.elevators.iter().filter(|e| e.is_bounded()).count()
    }

    pub fn genus(&self) -> i64 {
        self.bounded_count() as i64 - self.height() as i64 + 1
    }

    pub fn leg_count(&self) -> usize {
        2 * self.floors.len() + self.elevators.iter().filter(|e| !e.is_bounded()).count()
    }

    /// Slope of floor `r` on each open interval between consecutive
    /// attached elevators: `slopes[0]` left of the first vertex.
    fn floor_slopes(&self, r: usize) -> Vec<i64> {
        let f = self.floor(r);
        let mut m = -f.left.slope.y;
        let mut out = vec![m];
        for i in self.attached(r) {
            let e = &self.elevators[i];
            if e.lower == r {
                m -= e.weight;
            } else {
                m += e.weight;
            }
            out.push(m);
        }
        out
    }

    /// Heights of floor `r` at its vertices, relative to its height at `x = 0`.
    fn relative_heights(&self, r: usize) -> Vec<Rational> {
        let att = self.attached(r);
        let slopes = self.floor_slopes(r);
        let xs: Vec<&Rational> = att.iter().map(|&i| &self.elevators[i].x).collect();
        let mut g = vec![Rational::zero()];
        for k in 1..xs.len() {
            let d = (xs[k].clone() - xs[k - 1].clone()) * rat(slopes[k]);
            g.push(g[k - 1].clone() + d);
        }
        // g at x = 0, by the piece containing 0
        let zero = Rational::zero();
        let k = xs.iter().take_while(|x| ***x <= zero).count();
        let g0 = if k == 0 {
            g[0].clone() + (zero - xs[0].clone()) * rat(slopes[0])
        } else {
            g[k - 1].clone() + (zero - xs[k - 1].clone()) * rat(slopes[k])
        };
        g.into_iter().map(|v| v - g0.clone()).collect()
    }

    pub fn width(&self) -> Rational {
        match (self.elevators.first(), self.elevators.last()) {
            (Some(a), Some(b)) => b.x.clone() - a.x.clone(),
            _ => Rational::zero(),
        }
    }

    /// Places floors with clearance `λ·max(width, 1) + r` above floor `r`.
    pub fn restretch(&mut self, lambda: &Rational) {
        let w = self.width().max(Rational::one());
        let gap = lambda.clone() * w;
        let mut top: Option<Rational> = None;
        for r in 1..=self.height() {
            let rel = self.relative_heights(r);
            let lo = rel.iter().min().cloned().unwrap_or_default();
            let hi = rel.iter().max().cloned().unwrap_or_default();
            let base = match &top {
                None => Rational::zero(),
                Some(t) => t.clone() + gap.clone() + rat(r as i64) - lo,
            };
            top = Some(base.clone() + hi);
            self.floors[r - 1].base = base;
        }
    }

    /// Replaces x-coordinates by their ranks `0, 1, 2, …`.
    pub fn normalize_x(&mut self) {
        for (i, e) in self.elevators.iter_mut().enumerate() {
            e.x = rat(i as i64);
        }
    }

    pub fn sort_elevators(&mut self) {
        self.elevators.sort_by(|a, b| a.x.cmp(&b.x));
    }

    pub fn realize(&self) -> Result<Realized, FloorError> {
        let h = self.height();
        let mut positions = Vec::new();
        let mut vertex = HashMap::new();
        let mut edges = Vec::new();
        let mut floor_edge = HashMap::new();
        let mut legs: Vec<(usize, usize, Slope)> = Vec::new();
        for r in 1..=h {
            let att = self.attached(r);
            if att.is_empty() {
                return Err(FloorError::InvalidPlan(format!("floor {r} has no elevator")));
            }
            let slopes = self.floor_slopes(r);
            let f = self.floor(r);
            if *slopes.last().unwrap() != f.right.slope.y {
                return Err(FloorError::InvalidPlan(format!("floor {r} is unbalanced")));
            }
            let rel = self.relative_heights(r);
            let first = positions.len();
            for (k, &i) in att.iter().enumerate() {
                vertex.insert((r, i), positions.len());
                positions.push(Point::new(self.elevators[i].x.clone(), f.base.clone() + rel[k].clone()));
            }
            for k in 0..att.len() - 1 {
                let len = self.elevators[att[k + 1]].x.clone() - self.elevators[att[k]].x.clone();
                floor_edge.insert((r, att[k]), edges.len());
                edges.push((first + k, first + k + 1, len, Vec2::new(1, slopes[k + 1])));
            }
            legs.push((f.left.id, first, f.left.slope));
            legs.push((f.right.id, first + att.len() - 1, f.right.slope));
        }
        let mut elevator_edge = vec![None; self.elevators.len()];
        for (i, e) in self.elevators.iter().enumerate() {
            match e.leg {
                Some(id) => {
                    let (anchor, s) = if e.lower == 0 {
                        (vertex[&(e.upper, i)], Vec2::new(0, -e.weight))
                    } else {
                        (vertex[&(e.lower, i)], Vec2::new(0, e.weight))
                    };
                    legs.push((id, anchor, s));
                }
                None => {
                    let (a, b) = (vertex[&(e.lower, i)], vertex[&(e.upper, i)]);
                    let len = (positions[b].y.clone() - positions[a].y.clone()) / rat(e.weight);
                    if !len.is_positive() {
                        return Err(FloorError::InvalidPlan(format!("elevator {i} has length {len}")));
                    }
                    elevator_edge[i] = Some(edges.len());
                    edges.push((a, b, len, Vec2::new(0, e.weight)));
                }
            }
        }
        legs.sort_by_key(|l| l.0);
        let curve = ParametrizedTropicalCurve::new(
            vec![0; positions.len()],
            positions,
            edges,
            legs.into_iter().map(|(_, a, s)| (a, s)).collect(),
        )
        .map_err(|e| FloorError::InvalidPlan(e.to_string()))?;
        Ok(Realized { curve, vertex, floor_edge, elevator_edge })
    }

    pub fn curve(&self) -> Result<Curve, FloorError> {
        Ok(self.realize()?.curve)
    }

    pub fn combinatorial_type(&self) -> Result<CombinatorialType, FloorError> {
        Ok(combinatorial_type(&self.curve()?))
    }

    /// Self-intersections of a stretched realization, counted combinatorially:
    /// elevators through intermediate floors plus crossing leg pairs.
    pub fn crossing_count(&self) -> usize {
        let through: usize = self.elevators.iter().map(|e| e.upper - e.lower - 1).sum();
        through + self.leg_inversions(true) + self.leg_inversions(false)
    }

    /// Pairs `r < s` whose left (or right) legs cross.
    pub fn leg_inversions(&self, left: bool) -> usize {
        let ys: Vec<i64> = self
            .floors
            .iter()
            .map(|f| if left { f.left.slope.y } else { f.right.slope.y })
            .collect();
        let mut n = 0;
        for r in 0..ys.len() {
            for s in r + 1..ys.len() {
                if ys[r] > ys[s] {
                    n += 1;
                }
            }
        }
        n
    }

    /// Total weight of elevators spanning the band between floors `r` and `r+1`.
    pub fn band_flux(&self, r: usize) -> i64 {
        self.elevators
            .iter()
            .filter(|e| e.lower <= r && e.upper > r)
            .map(|e| e.weight)
            .sum()
    }

    /// Image under `y ↦ −y`.
    pub fn mirror_y(&self) -> FloorPlan {
        let h = self.height();
        let flip = |r: usize| h + 1 - r;
        FloorPlan {
            floors: self
                .floors
                .iter()
                .rev()
                .map(|f| PlanFloor {
                    left: PlanLeg { id: f.left.id, slope: f.left.slope.mirror_y() },
                    right: PlanLeg { id: f.right.id, slope: f.right.slope.mirror_y() },
                    base: -f.base.clone(),
                })
                .collect(),
            elevators: self
                .elevators
                .iter()
                .map(|e| PlanElevator {
                    lower: flip(e.upper),
                    upper: flip(e.lower),
                    weight: e.weight,
                    x: e.x.clone(),
                    leg: e.leg,
                })
                .collect(),
        }
    }

    /// Reads the plan of a curve whose floors are paths with one elevator at
    /// each vertex. Elevators with equal x are ordered by index when
    /// `allow_ties`, otherwise rejected.
    pub fn from_curve(c: &Curve, allow_ties: bool) -> Result<FloorPlan, FloorError> {
        let fd = super::decompose(c, allow_ties)?;
        let h = fd.floors.len();
        let mut floors = Vec::new();
        for (k, fl) in fd.floors.iter().enumerate() {
            let r = k + 1;
            let left: Vec<_> = fl.legs.iter().filter(|&&l| c.leg_slope(l).x < 0).collect();
            let right: Vec<_> = fl.legs.iter().filter(|&&l| c.leg_slope(l).x > 0).collect();
            if left.len() != 1 || right.len() != 1 {
                return Err(FloorError::NotFloorDecomposed(format!("floor {r} is not a path")));
            }
            for &v in &fl.vertices {
                let vertical = c.star(v).iter().filter(|(_, s)| s.x == 0).count();
                if vertical != 1 || c.star(v).len() != 3 {
                    return Err(FloorError::NotFloorDecomposed(format!("vertex {v} is not a floor vertex")));
                }
            }
            let (l, rr) = (*left[0], *right[0]);
            let ls = c.leg_slope(l);
            let rs = c.leg_slope(rr);
            if ls.x != -1 || rs.x != 1 {
                return Err(FloorError::NotFloorDecomposed("non-primitive floor leg".into()));
            }
            floors.push(PlanFloor {
                left: PlanLeg { id: l, slope: ls },
                right: PlanLeg { id: rr, slope: rs },
                base: Rational::zero(),
            });
        }
        let elevators = fd
            .elevators
            .iter()
            .map(|e| PlanElevator {
                lower: e.lower,
                upper: e.upper,
                weight: e.weight,
                x: e.x.clone(),
                leg: match e.piece {
                    crate::curve::PieceId::Leg(l) => Some(l),
                    crate::curve::PieceId::Edge(_) => None,
                },
            })
            .collect();
        let mut plan = FloorPlan { floors, elevators };
        // recover each floor's height at x = 0 from its leftmost vertex
        for r in 1..=h {
            let att = plan.attached(r);
            let i = att[0];
            let e = &fd.elevators[i];
            let v = if e.lower == r { e.lower_vertex } else { e.upper_vertex }.unwrap();
            let rel = plan.relative_heights(r);
            plan.floors[r - 1].base = c.position(v).y.clone() - rel[0].clone();
        }
        Ok(plan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn conic() -> FloorPlan {
        let leg = |id, x, y| PlanLeg { id, slope: Vec2::new(x, y) };
        let mut p = FloorPlan {
            floors: vec![
                PlanFloor { left: leg(0, -1, 0), right: leg(1, 1, 1), base: Rational::zero() },
                PlanFloor { left: leg(2, -1, 0), right: leg(3, 1, 1), base: Rational::zero() },
            ],
            elevators: vec![
                PlanElevator { lower: 0, upper: 1, weight: 1, x: rat(0), leg: Some(4) },
                PlanElevator { lower: 0, upper: 1, weight: 1, x: rat(1), leg: Some(5) },
                PlanElevator { lower: 1, upper: 2, weight: 1, x: rat(2), leg: None },
            ],
        };
        p.restretch(&rat(10));
        p
    }

    #[test]
    fn conic_realizes() {
        let p = conic();
        let c = p.curve().unwrap();
        assert_eq!(c.genus(), 0);
        assert_eq!(c.vertex_count(), 4);
        assert!(crate::curve::is_simple(&c));
        assert_eq!(p.crossing_count(), 0);
        let back = FloorPlan::from_curve(&c, false).unwrap();
        assert_eq!(back.curve().unwrap(), c);
    }

    #[test]
    fn mirror_twice_is_identity() {
        let p = conic();
        assert_eq!(p.mirror_y().mirror_y(), p);
    }
}
