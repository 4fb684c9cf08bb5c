//! Unimodular ssfd curves of every genus for polygons with `a_0 ≥ a_1 − 1`,
//! and (very) admissibility checks.

use thiserror::Error;

use crate::curve::is_unimodular;
use crate::floors::{default_lambda, FloorPlan, PlanElevator, PlanFloor, PlanLeg};
use crate::moves::{plan_of, settle, MoveError};
use crate::polygon::{
    interior_lattice_count, is_h_transverse, reduced_dual_degree, satisfies_sufficient_admissibility, slice_profile,
    strip_shifts, LatticePolygon,
};
use crate::scalar::Rational;
use crate::{Curve, Vec2};

mod admissible;

pub use admissible::{check_g_admissible, Admissibility};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("polygon is not h-transverse")]
    NotHTransverse,
    #[error("polygon has no horizontal side")]
    NoHorizontalSide,
    #[error("no floor-elevator crossing left")]
    NoCrossing,
    #[error("genus {0} out of range")]
    GenusOutOfRange(i64),
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Orients `p` with a horizontal side at the bottom, preferring an
/// orientation with `a_0 ≥ a_1 − 1`; `true` when reflected.
fn upright(p: &LatticePolygon) -> Result<(LatticePolygon, bool), ConstructError> {
    if !is_h_transverse(p) {
        return Err(ConstructError::NotHTransverse);
    }
    let good = |q: &LatticePolygon| satisfies_sufficient_admissibility(q).unwrap_or(false);
    let flipped = p.reflect_y();
    match (p.has_bottom_side(), p.has_top_side()) {
        (false, false) => Err(ConstructError::NoHorizontalSide),
        (true, true) if !good(p) && good(&flipped) => Ok((flipped, true)),
        (true, _) => Ok((p.clone(), false)),
        (false, true) => Ok((flipped, true)),
    }
}

/// Genus-0 plan for a polygon with a bottom side, built top-down: each floor
/// is the strip curve below the part already built, glued along the leftmost
/// downward leg.
pub(crate) fn genus0_plan(p: &LatticePolygon) -> Result<FloorPlan, ConstructError> {
    let prof = slice_profile(p).map_err(|_| ConstructError::NotHTransverse)?;
    let h = prof.height();
    let a = |r: usize| prof.a(r);
    let floors: Vec<PlanFloor> = (1..=h)
        .map(|r| {
            let (t, u) = strip_shifts(p, r);
            PlanFloor {
                left: PlanLeg { id: 2 * (r - 1), slope: Vec2::new(-1, t) },
                right: PlanLeg { id: 2 * (r - 1) + 1, slope: Vec2::new(1, -u) },
                base: Rational::default(),
            }
        })
        .collect();
    let leg = |lower, upper| PlanElevator { lower, upper, weight: 1, x: Rational::default(), leg: Some(0) };
    let mut elevators: Vec<PlanElevator> = (0..a(h - 1)).map(|_| leg(0, h)).collect();
    elevators.extend((0..a(h)).map(|_| leg(h, h + 1)));
    for r in (1..h).rev() {
        let fresh = a(r - 1) - a(r) + 1;
        if fresh < 0 {
            return Err(ConstructError::PreconditionFailed(format!("slice {} shrinks by more than one", r - 1)));
        }
        let i = elevators.iter().position(|e| e.lower == 0).expect("a downward leg");
        elevators[i] = PlanElevator { lower: r, leg: None, ..elevators[i].clone() };
        elevators.splice(i..i, (0..fresh).map(|_| leg(0, r)));
    }
    let mut next = 2 * h;
    for e in elevators.iter_mut().filter(|e| e.leg.is_some()) {
        e.leg = Some(next);
        next += 1;
    }
    let plan = FloorPlan { floors, elevators };
    if plan.leg_inversions(true) + plan.leg_inversions(false) > 0 {
        return Err(ConstructError::PreconditionFailed("floors cross".into()));
    }
    Ok(plan)
}

fn finish(mut plan: FloorPlan, mirrored: bool, lambda: &Rational) -> Result<Curve, ConstructError> {
    let c = settle(&mut plan, lambda)?.curve;
    Ok(if mirrored { c.mirror_y() } else { c })
}

fn check_sufficient(p: &LatticePolygon) -> Result<(), ConstructError> {
    if !satisfies_sufficient_admissibility(p).map_err(|_| ConstructError::NotHTransverse)? {
        return Err(ConstructError::PreconditionFailed("a_0 < a_1 - 1".into()));
    }
    Ok(())
}

pub fn build_genus0_unimodular(p: &LatticePolygon) -> Result<Curve, ConstructError> {
    let (q, mirrored) = upright(p)?;
    check_sufficient(&q)?;
    finish(genus0_plan(&q)?, mirrored, &default_lambda(&reduced_dual_degree(&q)))
}

/// Lowest floor crossed by an elevator, and the leftmost such elevator.
fn first_crossing(plan: &FloorPlan) -> Option<(usize, usize)> {
    (1..=plan.height())
        .find_map(|r| (0..plan.elevators.len()).find(|&i| plan.elevators[i].lower < r && r < plan.elevators[i].upper).map(|i| (r, i)))
}

/// Glues the first floor–elevator crossing into a 4-valent vertex and
/// resolves it with a new floor edge: the elevator now stops at the floor
/// and leaves it again just to the right.
pub(crate) fn increase_plan_genus(plan: &FloorPlan) -> Result<FloorPlan, ConstructError> {
    let (r, i) = first_crossing(plan).ok_or(ConstructError::NoCrossing)?;
    let mut q = plan.clone();
    let e = q.elevators[i].clone();
    let (lo, hi) = if e.lower == 0 {
        (PlanElevator { upper: r, ..e.clone() }, PlanElevator { lower: r, leg: None, ..e })
    } else {
        (PlanElevator { upper: r, leg: None, ..e.clone() }, PlanElevator { lower: r, ..e })
    };
    q.elevators[i] = lo;
    q.elevators.insert(i + 1, hi);
    Ok(q)
}

pub fn increase_genus(c: &Curve) -> Result<Curve, ConstructError> {
    increase_genus_with(c, &default_lambda(&c.degree()))
}

pub fn increase_genus_with(c: &Curve, lambda: &Rational) -> Result<Curve, ConstructError> {
    // floors are numbered bottom-up, so a curve built upside down is handled
    // as its mirror image
    let mirrored = !c.degree().slopes.contains(&Vec2::new(0, -1));
    let c = if mirrored { c.mirror_y() } else { c.clone() };
    let plan = plan_of(&c)?;
    if plan.leg_inversions(true) + plan.leg_inversions(false) > 0 {
        return Err(ConstructError::PreconditionFailed("floors intersect".into()));
    }
    finish(increase_plan_genus(&plan)?, mirrored, lambda)
}

pub fn build_unimodular_ssfd(p: &LatticePolygon, g: i64) -> Result<Curve, ConstructError> {
    let (q, mirrored) = upright(p)?;
    check_sufficient(&q)?;
    if g < 0 || g > interior_lattice_count(&q) {
        return Err(ConstructError::GenusOutOfRange(g));
    }
    let mut plan = genus0_plan(&q)?;
    for _ in 0..g {
        plan = increase_plan_genus(&plan)?;
    }
    let c = finish(plan, mirrored, &default_lambda(&reduced_dual_degree(&q)))?;
    debug_assert!(is_unimodular(&c));
    Ok(c)
}

#[cfg(test)]
mod tests;
