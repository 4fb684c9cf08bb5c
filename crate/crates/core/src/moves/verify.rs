//! Independent checker for move certificates. It only relies on the curve
//! layer: type computations, contraction and isomorphism.

use crate::curve::{combinatorial_type, types_isomorphic, types_isomorphic_unordered, CombinatorialType};

use super::certificate::{MoveCertificate, StepKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub failure: Option<Failure>,
}

fn fail(step: usize, reason: &str) -> Verification {
    Verification { ok: false, failure: Some(Failure { step, reason: reason.to_string() }) }
}

/// Some edge of `nice` contracts to `wall`.
fn adjacent(nice: &CombinatorialType, wall: &CombinatorialType) -> bool {
    nice.edges.len() == wall.edges.len() + 1
        && (0..nice.edges.len())
            .filter_map(|e| nice.contract(e))
            .any(|c| types_isomorphic_unordered(&c, wall))
}

pub fn verify_certificate(cert: &MoveCertificate) -> Verification {
    let steps = &cert.steps;
    if steps.is_empty() {
        return fail(0, "Empty");
    }
    let mut degree0 = steps[0].ty.degree().slopes;
    degree0.sort();
    let genus0 = steps[0].ty.genus();
    for (i, s) in steps.iter().enumerate() {
        let expected = if i % 2 == 0 { StepKind::Nice } else { StepKind::Wall };
        if s.kind != expected {
            return fail(i, "Alternation");
        }
        if !s.ty.is_balanced() {
            return fail(i, "Unbalanced");
        }
        if !s.ty.is_connected() {
            return fail(i, "Disconnected");
        }
        let mut d = s.ty.degree().slopes;
        d.sort();
        if d != degree0 || s.ty.genus() != genus0 {
            return fail(i, "DegreeMismatch");
        }
        match s.kind {
            StepKind::Nice if !s.ty.is_nice() => return fail(i, "NotNice"),
            StepKind::Wall if !s.ty.is_simple_wall() => return fail(i, "NotAWall"),
            _ => {}
        }
        if !types_isomorphic(&combinatorial_type(&s.witness), &s.ty) {
            return fail(i, "WitnessMismatch");
        }
    }
    if steps.len() % 2 == 0 {
        return fail(steps.len() - 1, "Alternation");
    }
    for i in (1..steps.len()).step_by(2) {
        if !adjacent(&steps[i - 1].ty, &steps[i].ty) {
            return fail(i, "NotAdjacent");
        }
        if !adjacent(&steps[i + 1].ty, &steps[i].ty) {
            return fail(i + 1, "NotAdjacent");
        }
    }
    Verification { ok: true, failure: None }
}
