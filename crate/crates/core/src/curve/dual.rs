//! Dual subdivision of a simple curve by labeling complement regions with
//! lattice points.

use super::geometry::{intersect_pieces, simplicity, Intersection, Piece, PieceId};
use super::{CurveError, ParametrizedTropicalCurve, Point};
use crate::lattice::{Slope, Vec2};
use crate::polygon::{validate_polygon, LatticePolygon};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSubdivision {
    pub cells: Vec<LatticePolygon>,
    /// Cell of each vertex (triangles).
    pub vertex_cells: Vec<usize>,
    /// Cell of each self-intersection point (parallelograms), in the order of
    /// `self_intersections`.
    pub crossing_cells: Vec<usize>,
}

/// Directions tried for the labeling rays; chosen to avoid small slopes.
const PROBES: [(i64, i64); 8] = [
    (1009, 3),
    (-7, 1013),
    (-1019, -11),
    (13, -1021),
    (1031, 1033),
    (-1039, 17),
    (19, 1049),
    (-1051, -1061),
];

pub fn dual_subdivision<S: Scalar>(
    c: &ParametrizedTropicalCurve<S>,
    p: &LatticePolygon,
) -> Result<DualSubdivision, CurveError> {
    let crossings = simplicity(c).map_err(CurveError::NotSimple)?;
    let q = c.degree().dual_polygon().ok_or(CurveError::DegreeMismatch)?;
    let shift = p.vertices()[0] - q.vertices()[0];
    if q.translate(shift) != *p {
        return Err(CurveError::DegreeMismatch);
    }
    let pieces = c.pieces();
    let mut cells = Vec::new();
    let mut vertex_cells = Vec::new();
    for v in 0..c.vertex_count() {
        let dirs: Vec<Slope> = c.star(v).iter().map(|&(_, s)| s).collect();
        vertex_cells.push(cells.len());
        cells.push(cell_at(c.position(v), &dirs, &pieces, p)?);
    }
    let mut crossing_cells = Vec::new();
    for x in &crossings {
        let (a, b) = x.slopes;
        crossing_cells.push(cells.len());
        cells.push(cell_at(&x.point, &[a, -a, b, -b], &pieces, p)?);
    }
    Ok(DualSubdivision { cells, vertex_cells, crossing_cells })
}

/// Lattice points of the sectors around `q` in counterclockwise order.
fn cell_at<S: Scalar>(
    q: &Point<S>,
    dirs: &[Slope],
    pieces: &[Piece<S>],
    p: &LatticePolygon,
) -> Result<LatticePolygon, CurveError> {
    for &(ux, uy) in &PROBES {
        let u = Vec2::new(ux, uy);
        if let Some(start) = ray_label(q, u, pieces, p) {
            let mut sorted: Vec<Slope> = dirs.to_vec();
            sorted.sort_by(|a, b| a.angle_cmp(*b));
            // rotate so the first direction is the first one after u
            let k = sorted.iter().position(|d| d.angle_cmp(u).is_gt()).unwrap_or(0);
            sorted.rotate_left(k);
            let mut pts = vec![start];
            let mut cur = start;
            for d in &sorted[..sorted.len() - 1] {
                cur = cur + d.rot90();
                pts.push(cur);
            }
            return validate_polygon(&pts).map_err(|e| CurveError::NotSimple(format!("dual cell: {e}")));
        }
    }
    Err(CurveError::NotSimple("no generic probe direction".into()))
}

/// Label of the region just off `q` in direction `u`, found by walking in
/// from infinity; `None` if the probe is not generic.
fn ray_label<S: Scalar>(q: &Point<S>, u: Vec2, pieces: &[Piece<S>], p: &LatticePolygon) -> Option<Vec2> {
    let best = p.vertices().iter().map(|m| m.dot(u)).max()?;
    let top: Vec<_> = p.vertices().iter().filter(|m| m.dot(u) == best).collect();
    if top.len() != 1 {
        return None;
    }
    let mut label = *top[0];
    let probe = Piece {
        id: PieceId::Leg(usize::MAX),
        origin: q.clone(),
        dir: (S::from_i64(u.x), S::from_i64(u.y)),
        ray: true,
        slope: u,
        ends: (usize::MAX, None),
    };
    let n = -u;
    for pc in pieces {
        if pc.slope.det(u) == 0 {
            // parallel: only acceptable if disjoint
            if intersect_pieces(&probe, pc) != Intersection::None {
                return None;
            }
            continue;
        }
        match intersect_pieces(&probe, pc) {
            Intersection::None => {}
            Intersection::Overlap => return None,
            Intersection::Point(_, t, s) => {
                if t.is_zero() {
                    // the piece passes through q itself; handled by the sector walk
                    continue;
                }
                let interior = s.is_positive() && (pc.ray || s < S::one());
                if !interior {
                    return None;
                }
                let r = pc.slope.rot90();
                label = label + if r.dot(n) > 0 { r } else { -r };
            }
        }
    }
    Some(label)
}
