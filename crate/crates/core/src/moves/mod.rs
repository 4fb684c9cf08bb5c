//! Rewriting ssfd curves through simple walls, with checkable certificates.

mod canonical;
mod certificate;
mod engine;
mod session;
mod verify;

pub use canonical::{compute_k, minimal_multiplicity_sequence};
pub use certificate::{Move, MoveCertificate, Side, Step, StepKind};
pub use verify::{verify_certificate, Failure, Verification};

use thiserror::Error;

use crate::curve::{combinatorial_type, is_simple, types_isomorphic_unordered, CombinatorialType};
use crate::floors::{default_lambda, floor_decompose, floor_gaps, FloorPlan};
use crate::polygon::{reduced_dual_degree, LatticePolygon, TropicalDegree};
use crate::scalar::Rational;
use crate::Curve;

use canonical::{canonical_plan, has_unit_down_leg};
pub(crate) use session::settle;
use session::Session;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("curve is not ssfd: {0}")]
    NotSsfd(String),
    #[error("elevators {0} and {} join the same pair of floors", .0 + 1)]
    ForbiddenSwap(usize),
    #[error("elevator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("polygon is not h-transverse")]
    NotHTransverse,
    #[error("degree has no vertical leg of weight one")]
    NoVerticalLeg,
    #[error("genus {0} out of range")]
    GenusOutOfRange(i64),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("degree or genus mismatch")]
    DegreeOrGenusMismatch,
    #[error("internal: {0}")]
    Internal(String),
}

/// Reads the plan of a simple floor-decomposed curve with vertically
/// separated floors.
pub fn plan_of(c: &Curve) -> Result<FloorPlan, MoveError> {
    if !is_simple(c) {
        return Err(MoveError::NotSsfd("not simple".into()));
    }
    let fd = floor_decompose(c).map_err(|e| MoveError::NotSsfd(e.to_string()))?;
    if floor_gaps(c, &fd).iter().any(|g| *g <= Rational::default()) {
        return Err(MoveError::NotSsfd("floors overlap vertically".into()));
    }
    FloorPlan::from_curve(c, false).map_err(|e| MoveError::NotSsfd(e.to_string()))
}

fn sorted_degree(d: &TropicalDegree) -> Vec<crate::Vec2> {
    let mut s = d.slopes.clone();
    s.sort();
    s
}

/// Stretching policy; `None` uses `4·|∇|²`.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    pub lambda: Option<Rational>,
}

impl Engine {
    pub fn with_lambda(lambda: Rational) -> Self {
        Engine { lambda: Some(lambda) }
    }

    fn lambda_for(&self, degree: &TropicalDegree) -> Rational {
        self.lambda.clone().unwrap_or_else(|| default_lambda(degree))
    }

    fn session(&self, c: &Curve) -> Result<Session, MoveError> {
        let plan = plan_of(c)?;
        let mut s = Session::new(plan, self.lambda_for(&c.degree()))?;
        s.cert = MoveCertificate::single(c.clone());
        Ok(s)
    }

    fn run(&self, c: &Curve, f: impl FnOnce(&mut Session) -> Result<(), MoveError>) -> Result<(MoveCertificate, Curve), MoveError> {
        let mut s = self.session(c)?;
        f(&mut s)?;
        Ok((s.cert, s.real.curve))
    }

    pub fn swap_elevators(&self, c: &Curve, i: usize) -> Result<(MoveCertificate, Curve), MoveError> {
        self.run(c, |s| s.swap(i))
    }

    /// Going up or down an elevator, whichever the pair at `i, i+1` admits.
    pub fn elevator_move(&self, c: &Curve, i: usize) -> Result<(MoveCertificate, Curve), MoveError> {
        self.run(c, |s| s.merge(i))
    }

    pub fn elevator_up(&self, c: &Curve, i: usize) -> Result<(MoveCertificate, Curve), MoveError> {
        self.run(c, |s| {
            let e = &s.plan.elevators;
            if i + 1 < e.len() && e[i].lower != e[i + 1].lower {
                return Err(MoveError::PreconditionFailed("elevators do not share their lower floor".into()));
            }
            s.merge(i)
        })
    }

    pub fn elevator_down(&self, c: &Curve, i: usize) -> Result<(MoveCertificate, Curve), MoveError> {
        self.run(c, |s| {
            let e = &s.plan.elevators;
            if i + 1 < e.len() && e[i].upper != e[i + 1].upper {
                return Err(MoveError::PreconditionFailed("elevators do not share their upper floor".into()));
            }
            s.merge(i)
        })
    }

    pub fn elevator_up_inverse(&self, c: &Curve, i: usize) -> Result<(MoveCertificate, Curve), MoveError> {
        self.run(c, |s| s.split(i, true))
    }

    pub fn elevator_down_inverse(&self, c: &Curve, i: usize) -> Result<(MoveCertificate, Curve), MoveError> {
        self.run(c, |s| s.split(i, false))
    }

    pub fn merge_crossing_legs(&self, c: &Curve, floor: usize, side: Side) -> Result<(MoveCertificate, Curve), MoveError> {
        self.run(c, |s| s.merge_legs(floor, side))
    }

    pub fn resolve_self_intersections(&self, c: &Curve) -> Result<(MoveCertificate, Curve), MoveError> {
        self.run(c, |s| s.resolve())
    }

    pub fn canonical_type(&self, p: &LatticePolygon, g: i64) -> Result<CombinatorialType, MoveError> {
        let degree = reduced_dual_degree(p);
        Ok(combinatorial_type(&self.canonical_curve(p, &degree, g)?))
    }

    /// A stretched curve of the canonical type for `(p, degree, g)`.
    pub fn canonical_curve(&self, p: &LatticePolygon, degree: &TropicalDegree, g: i64) -> Result<Curve, MoveError> {
        let lambda = self.lambda_for(degree);
        if has_unit_down_leg(degree) {
            let mut plan = canonical_plan(p, degree, g)?;
            return Ok(settle(&mut plan, &lambda)?.curve);
        }
        if degree.count(crate::Vec2::new(0, 1)) == 0 {
            return Err(MoveError::NoVerticalLeg);
        }
        let md = TropicalDegree::new(degree.slopes.iter().map(|s| s.mirror_y()).collect());
        let mut plan = canonical_plan(&p.reflect_y(), &md, g)?;
        let c = settle(&mut plan, &lambda)?.curve;
        Ok(c.mirror_y())
    }

    /// Canonicalizes a plan; the certificate starts at `start` when given.
    pub fn canonicalize_plan(&self, plan: FloorPlan, start: Option<&Curve>) -> Result<(MoveCertificate, Curve), MoveError> {
        let probe = plan.curve().map_err(|e| MoveError::NotSsfd(e.to_string()))?;
        let degree = probe.degree();
        let genus = probe.genus();
        let mirror = !has_unit_down_leg(&degree);
        if mirror && degree.count(crate::Vec2::new(0, 1)) == 0 {
            return Err(MoveError::NoVerticalLeg);
        }
        if degree.slopes.iter().any(|s| s.x != 0 && s.primitive() != *s) {
            return Err(MoveError::PreconditionFailed("non-primitive non-vertical slope".into()));
        }
        let h = plan.height();
        let plan = if mirror { plan.mirror_y() } else { plan };
        let mut s = Session::new(plan, self.lambda_for(&degree))?;
        if let Some(c) = start {
            s.cert = MoveCertificate::single(if mirror { c.mirror_y() } else { c.clone() });
        }
        s.resolve()?;
        s.minimize()?;
        s.sort_layers()?;
        let d = s.curve().degree();
        let p = d.dual_polygon().ok_or_else(|| MoveError::Internal("degree without dual polygon".into()))?;
        let target = canonical_plan(&p, &d, genus)?;
        let mut target_plan = target;
        let t = settle(&mut target_plan, &s.lambda)?;
        if !types_isomorphic_unordered(&combinatorial_type(&t.curve), &s.ty) {
            return Err(MoveError::Internal("rewriting did not reach the canonical type".into()));
        }
        if mirror {
            Ok((s.cert.mirror_y(h), s.real.curve.mirror_y()))
        } else {
            Ok((s.cert, s.real.curve))
        }
    }

    pub fn canonicalize(&self, c: &Curve) -> Result<(MoveCertificate, Curve), MoveError> {
        let plan = plan_of(c)?;
        self.canonicalize_plan(plan, Some(c))
    }

    pub fn connect(&self, a: &Curve, b: &Curve) -> Result<MoveCertificate, MoveError> {
        if sorted_degree(&a.degree()) != sorted_degree(&b.degree()) || a.genus() != b.genus() {
            return Err(MoveError::DegreeOrGenusMismatch);
        }
        let (mut ca, _) = self.canonicalize(a)?;
        let (cb, _) = self.canonicalize(b)?;
        if !types_isomorphic_unordered(&ca.last().ty, &cb.last().ty) {
            return Err(MoveError::Internal("canonical types differ".into()));
        }
        ca.extend(cb.reversed());
        Ok(ca)
    }
}

pub fn swap_elevators(c: &Curve, i: usize) -> Result<(MoveCertificate, Curve), MoveError> {
    Engine::default().swap_elevators(c, i)
}

pub fn elevator_up(c: &Curve, i: usize) -> Result<(MoveCertificate, Curve), MoveError> {
    Engine::default().elevator_up(c, i)
}

pub fn elevator_down(c: &Curve, i: usize) -> Result<(MoveCertificate, Curve), MoveError> {
    Engine::default().elevator_down(c, i)
}

pub fn resolve_self_intersections(c: &Curve) -> Result<(MoveCertificate, Curve), MoveError> {
    Engine::default().resolve_self_intersections(c)
}

pub fn canonical_type(p: &LatticePolygon, g: i64) -> Result<CombinatorialType, MoveError> {
    Engine::default().canonical_type(p, g)
}

pub fn canonicalize(c: &Curve) -> Result<(MoveCertificate, Curve), MoveError> {
    Engine::default().canonicalize(c)
}

pub fn connect(a: &Curve, b: &Curve) -> Result<MoveCertificate, MoveError> {
    Engine::default().connect(a, b)
}

#[cfg(test)]
mod tests;
