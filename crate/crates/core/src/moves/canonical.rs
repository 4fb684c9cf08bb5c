use super::MoveError;
use crate::floors::{FloorPlan, MultiplicitySequence, PlanElevator, PlanFloor, PlanLeg};
use crate::lattice::Vec2;
use crate::polygon::{slice_profile, strip_shifts, LatticePolygon, SliceProfile, TropicalDegree};
use crate::scalar::Rational;

/// Minimal `k` with `Σ_{r=1}^k (a_r − 1) > g`, else `H − 1`.
pub fn compute_k(profile: &SliceProfile, g: i64) -> usize {
    let h = profile.height();
    let mut sum = 0;
    for k in 1..h {
        sum += profile.a(k) - 1;
        if sum > g {
            return k;
        }
    }
    h.saturating_sub(1)
}

fn vertical(degree: &TropicalDegree, down: bool) -> Vec<i64> {
    let mut w: Vec<i64> = degree
        .slopes
        .iter()
        .filter(|s| s.x == 0 && (s.y < 0) == down)
        .map(|s| s.y.abs())
        .collect();
    w.sort_unstable();
    w
}

pub(crate) fn has_unit_down_leg(degree: &TropicalDegree) -> bool {
    degree.count(Vec2::new(0, -1)) > 0
}

/// The lexicographically minimal multiplicity sequence of genus `g`; leg
/// layers are sorted by weight.
pub fn minimal_multiplicity_sequence(
    profile: &SliceProfile,
    degree: &TropicalDegree,
    g: i64,
) -> Result<MultiplicitySequence, MoveError> {
    if !has_unit_down_leg(degree) {
        return Err(MoveError::NoVerticalLeg);
    }
    let h = profile.height();
    if g < 0 || g > profile.interior() {
        return Err(MoveError::GenusOutOfRange(g));
    }
    let (down, up) = (vertical(degree, true), vertical(degree, false));
    if down.iter().sum::<i64>() != profile.a(0) || up.iter().sum::<i64>() != profile.a(h) {
        return Err(MoveError::Infeasible("vertical legs do not match the end slices".into()));
    }
    let mut layers = vec![Vec::new(); h + 1];
    layers[0] = down;
    if h >= 2 {
        let k = compute_k(profile, g);
        for (r, layer) in layers.iter_mut().enumerate().take(k).skip(1) {
            *layer = vec![1; profile.a(r) as usize];
        }
        let used: i64 = (1..k).map(|r| profile.a(r) - 1).sum();
        let jk = g + 1 - used;
        if jk < 1 || jk > profile.a(k) {
            return Err(MoveError::Infeasible(format!("j_{k} = {jk}")));
        }
        let mut lk = vec![1; jk as usize - 1];
        lk.push(profile.a(k) - jk + 1);
        layers[k] = lk;
        for (r, layer) in layers.iter_mut().enumerate().take(h).skip(k + 1) {
            *layer = vec![profile.a(r)];
        }
    }
    layers[h] = up;
    Ok(MultiplicitySequence::from_layers(&layers))
}

/// Floors dual to the unit strips of `p`, elevators from the minimal sequence,
/// ordered layer by layer. Requires a unit downward leg in `degree`.
pub(crate) fn canonical_plan(p: &LatticePolygon, degree: &TropicalDegree, g: i64) -> Result<FloorPlan, MoveError> {
    let profile = slice_profile(p).map_err(|_| MoveError::NotHTransverse)?;
    let seq = minimal_multiplicity_sequence(&profile, degree, g)?;
    let h = profile.height();
    let mut floors = Vec::new();
    let mut sides: Vec<Vec2> = Vec::new();
    for r in 1..=h {
        let (t, u) = strip_shifts(p, r);
        let (left, right) = (Vec2::new(-1, t), Vec2::new(1, -u));
        sides.push(left);
        sides.push(right);
        floors.push(PlanFloor {
            left: PlanLeg { id: 2 * (r - 1), slope: left },
            right: PlanLeg { id: 2 * (r - 1) + 1, slope: right },
            base: Rational::default(),
        });
    }
    let mut expected: Vec<Vec2> = degree.slopes.iter().copied().filter(|s| s.x != 0).collect();
    expected.sort();
    sides.sort();
    if sides != expected {
        return Err(MoveError::PreconditionFailed("degree is not the reduced dual of the polygon".into()));
    }
    let mut next_leg = 2 * h;
    let mut elevators = Vec::new();
    for &(r, _, w) in &seq.entries {
        let leg = (r == 0 || r == h).then(|| {
            next_leg += 1;
            next_leg - 1
        });
        elevators.push(PlanElevator { lower: r, upper: r + 1, weight: w, x: Rational::default(), leg });
    }
    Ok(FloorPlan { floors, elevators })
}
