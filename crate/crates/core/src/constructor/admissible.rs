use crate::curve::{is_unimodular, mikhalkin_multiplicity};
use crate::enumeration::floor_diagrams;
use crate::floors::default_lambda;
use crate::moves::settle;
use crate::polygon::{interior_lattice_count, reduced_dual_degree, satisfies_sufficient_admissibility, LatticePolygon};
use crate::Curve;

use super::{build_unimodular_ssfd, upright, ConstructError};

#[derive(Clone, Debug)]
pub enum Admissibility {
    /// A multiplicity-one ssfd curve; `unimodular` when it is also unimodular,
    /// which makes the polygon g-very admissible.
    Yes { witness: Curve, unimodular: bool },
    /// Exhaustive search found no multiplicity-one ssfd curve.
    No { diagrams: usize },
    Unknown,
}

impl Admissibility {
    pub fn is_yes(&self) -> bool {
        matches!(self, Admissibility::Yes { .. })
    }

    pub fn is_very(&self) -> bool {
        matches!(self, Admissibility::Yes { unimodular: true, .. })
    }
}

/// Decides g-admissibility, and g-very admissibility when the answer is
/// `Yes`. `budget` bounds the number of floor diagrams examined.
pub fn check_g_admissible(p: &LatticePolygon, g: i64, budget: Option<usize>) -> Result<Admissibility, ConstructError> {
    let (q, mirrored) = upright(p)?;
    if g < 0 || g > interior_lattice_count(&q) {
        return Ok(Admissibility::No { diagrams: 0 });
    }
    if satisfies_sufficient_admissibility(&q).unwrap_or(false) {
        let witness = build_unimodular_ssfd(p, g)?;
        return Ok(Admissibility::Yes { witness, unimodular: true });
    }
    // multiplicity and unimodularity do not depend on the elevator order, so
    // one realization per diagram with unit weights decides both
    let diagrams = floor_diagrams(&q, g).map_err(|e| ConstructError::PreconditionFailed(e.to_string()))?;
    if budget.is_some_and(|b| diagrams.len() > b) {
        return Ok(Admissibility::Unknown);
    }
    let lambda = default_lambda(&reduced_dual_degree(&q));
    let flip = |c: Curve| if mirrored { c.mirror_y() } else { c };
    let mut first = None;
    for d in diagrams.iter().filter(|d| d.elevators.iter().all(|e| e.weight == 1)) {
        let c = settle(&mut d.clone(), &lambda)?.curve;
        if mikhalkin_multiplicity(&c) != Ok(1) {
            continue;
        }
        if is_unimodular(&c) {
            return Ok(Admissibility::Yes { witness: flip(c), unimodular: true });
        }
        first.get_or_insert(c);
    }
    Ok(match first {
        Some(c) => Admissibility::Yes { witness: flip(c), unimodular: false },
        None => Admissibility::No { diagrams: diagrams.len() },
    })
}
