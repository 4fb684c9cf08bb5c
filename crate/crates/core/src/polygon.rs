//! Convex lattice polygons, slices, and the reduced tropical degree they determine.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{LatticePoint, Vec2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("polygon needs at least three vertices")]
    TooFewVertices,
    #[error("polygon has zero area")]
    Degenerate,
    #[error("polygon is not strictly convex at vertex {0}")]
    NotConvex(usize),
    #[error("polygon is not h-transverse")]
    NotHTransverse,
    #[error("cell is neither a triangle nor a parallelogram")]
    NotTriangleOrParallelogram,
}

/// A strictly convex lattice polygon, counterclockwise, lexicographically
/// smallest vertex first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

/// Lengths `a_0..a_H` of the horizontal slices at heights `r0..r0+H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceProfile {
    pub r0: i64,
    pub heights: Vec<i64>,
}

impl SliceProfile {
    pub fn height(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn a(&self, r: usize) -> i64 {
        self.heights[r]
    }

    /// Number of interior lattice points, `Σ_{0<r<H} (a_r − 1)`.
    pub fn interior(&self) -> i64 {
        let h = self.height();
        (1..h).map(|r| self.heights[r] - 1).sum()
    }
}

/// A multiset of nonzero integer slopes summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalDegree {
    pub slopes: Vec<Vec2>,
}

impl TropicalDegree {
    pub fn new(mut slopes: Vec<Vec2>) -> Self {
        slopes.sort_by(|a, b| a.angle_cmp(*b).then(a.cmp(b)));
        TropicalDegree { slopes }
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.slopes.iter().all(|s| s.lattice_length() == 1)
    }

    pub fn sum(&self) -> Vec2 {
        self.slopes.iter().fold(Vec2::ZERO, |a, &b| a + b)
    }

    pub fn count(&self, v: Vec2) -> usize {
        self.slopes.iter().filter(|&&s| s == v).count()
    }

    /// The polygon dual to this degree, anchored at the origin-normalized
    /// position of its smallest vertex. `None` if the slopes do not close up
    /// to a polygon of positive area.
    pub fn dual_polygon(&self) -> Option<LatticePolygon> {
        if !self.sum().is_zero() || self.slopes.iter().any(|s| s.is_zero()) {
            return None;
        }
        // outer normal n rotates by +90° to the counterclockwise side direction
        let mut sides: Vec<Vec2> = self.slopes.iter().map(|n| n.rot90()).collect();
        sides.sort_by(|a, b| a.angle_cmp(*b));
        let mut pts = Vec::new();
        let mut cur = Vec2::ZERO;
        let mut i = 0;
        while i < sides.len() {
            let dir = sides[i].primitive();
            let mut acc = Vec2::ZERO;
            while i < sides.len() && sides[i].primitive() == dir {
                acc = acc + sides[i];
                i += 1;
            }
            pts.push(cur);
            cur = cur + acc;
        }
        validate_polygon(&pts).ok()
    }
}

impl LatticePolygon {
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn side(&self, i: usize) -> Vec2 {
        let n = self.vertices.len();
        self.vertices[(i + 1) % n] - self.vertices[i]
    }

    pub fn sides(&self) -> impl Iterator<Item = Vec2> + '_ {
        (0..self.vertices.len()).map(|i| self.side(i))
    }

    /// Twice the euclidean area.
    pub fn double_area(&self) -> i64 {
        double_area(&self.vertices)
    }

    pub fn area(&self) -> Ratio<i64> {
        Ratio::new(self.double_area(), 2)
    }

    pub fn boundary_lattice_count(&self) -> i64 {
        self.sides().map(|s| s.lattice_length()).sum()
    }

    pub fn min_y(&self) -> i64 {
        self.vertices.iter().map(|v| v.y).min().unwrap()
    }

    pub fn max_y(&self) -> i64 {
        self.vertices.iter().map(|v| v.y).max().unwrap()
    }

    pub fn has_bottom_side(&self) -> bool {
        let y = self.min_y();
        self.vertices.iter().filter(|v| v.y == y).count() == 2
    }

    pub fn has_top_side(&self) -> bool {
        let y = self.max_y();
        self.vertices.iter().filter(|v| v.y == y).count() == 2
    }

    pub fn translate(&self, t: Vec2) -> LatticePolygon {
        let pts: Vec<_> = self.vertices.iter().map(|&v| v + t).collect();
        validate_polygon(&pts).expect("translation preserves validity")
    }

    /// Image under `(x, y) ↦ (x, −y)`.
    pub fn reflect_y(&self) -> LatticePolygon {
        let pts: Vec<_> = self.vertices.iter().map(|v| v.mirror_y()).collect();
        validate_polygon(&pts).expect("reflection preserves validity")
    }

    /// Image under `(x, y) ↦ (−x, y)`.
    pub fn reflect_x(&self) -> LatticePolygon {
        let pts: Vec<_> = self.vertices.iter().map(|v| v.mirror_x()).collect();
        validate_polygon(&pts).expect("reflection preserves validity")
    }

    /// Whether `p` lies strictly inside.
    pub fn contains_strictly(&self, p: LatticePoint) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| self.side(i).det(p - self.vertices[i]) > 0)
    }

    /// Whether `p` lies in the closed polygon.
    pub fn contains(&self, p: LatticePoint) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| self.side(i).det(p - self.vertices[i]) >= 0)
    }

    pub fn to_json(&self) -> String {
        let file = PolygonFile {
            vertices: self.vertices.iter().map(|&v| v.into()).collect(),
        };
        serde_json::to_string(&file).expect("polygon serializes")
    }
}

fn double_area(pts: &[LatticePoint]) -> i64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].det(pts[(i + 1) % n])).sum()
}

pub fn validate_polygon(vertices: &[LatticePoint]) -> Result<LatticePolygon, PolygonError> {
    if vertices.len() < 3 {
        return Err(PolygonError::TooFewVertices);
    }
    let mut pts = vertices.to_vec();
    let a2 = double_area(&pts);
    if a2 == 0 {
        return Err(PolygonError::Degenerate);
    }
    if a2 < 0 {
        pts.reverse();
    }
    let n = pts.len();
    let mut wraps = 0;
    for i in 0..n {
        let e0 = pts[(i + 1) % n] - pts[i];
        let e1 = pts[(i + 2) % n] - pts[(i + 1) % n];
        if e0.det(e1) <= 0 {
            return Err(PolygonError::NotConvex((i + 1) % n));
        }
        if e1.angle_cmp(e0).is_lt() {
            wraps += 1;
        }
    }
    // left turns everywhere but winding more than once: a star polygon
    if wraps != 1 {
        return Err(PolygonError::NotConvex(0));
    }
    let start = (0..n).min_by_key(|&i| (pts[i].x, pts[i].y)).unwrap();
    pts.rotate_left(start);
    Ok(LatticePolygon { vertices: pts })
}

/// Every non-horizontal side has primitive direction `(k, ±1)`, i.e. each
/// horizontal lattice line meets the boundary in lattice points.
pub fn is_h_transverse(p: &LatticePolygon) -> bool {
    p.sides().all(|s| s.y == 0 || s.primitive().y.abs() == 1)
}

pub fn slice_profile(p: &LatticePolygon) -> Result<SliceProfile, PolygonError> {
    if !is_h_transverse(p) {
        return Err(PolygonError::NotHTransverse);
    }
    let r0 = p.min_y();
    let h = p.max_y() - r0;
    let heights = (0..=h)
        .map(|r| {
            let (lo, hi) = slice_bounds(p, r0 + r);
            let len = hi - lo;
            debug_assert!(len.is_integer());
            len.to_integer()
        })
        .collect();
    Ok(SliceProfile { r0, heights })
}

/// Leftmost and rightmost x-coordinates of `P ∩ {y = level}`.
pub fn slice_bounds(p: &LatticePolygon, level: i64) -> (Ratio<i64>, Ratio<i64>) {
    let mut xs: Vec<Ratio<i64>> = Vec::new();
    let n = p.vertices.len();
    for i in 0..n {
        let a = p.vertices[i];
        let b = p.vertices[(i + 1) % n];
        if (a.y <= level && level <= b.y) || (b.y <= level && level <= a.y) {
            if a.y == b.y {
                xs.push(Ratio::from_integer(a.x));
                xs.push(Ratio::from_integer(b.x));
            } else {
                xs.push(Ratio::from_integer(a.x) + Ratio::new((level - a.y) * (b.x - a.x), b.y - a.y));
            }
        }
    }
    let lo = xs.iter().min().cloned().unwrap_or_default();
    let hi = xs.iter().max().cloned().unwrap_or_default();
    (lo, hi)
}

/// Interior lattice points, counted directly.
pub fn interior_lattice_count(p: &LatticePolygon) -> i64 {
    let (x0, x1) = (
        p.vertices.iter().map(|v| v.x).min().unwrap(),
        p.vertices.iter().map(|v| v.x).max().unwrap(),
    );
    let (y0, y1) = (p.min_y(), p.max_y());
    let mut count = 0;
    for y in y0 + 1..y1 {
        for x in x0 + 1..x1 {
            if p.contains_strictly(Vec2::new(x, y)) {
                count += 1;
            }
        }
    }
    count
}

pub fn is_primitive_cell(c: &LatticePolygon) -> Result<bool, PolygonError> {
    let v = c.vertices();
    match v.len() {
        3 => Ok(c.double_area() == 1),
        4 if v[0] + v[2] == v[1] + v[3] => Ok(c.double_area() == 2),
        _ => Err(PolygonError::NotTriangleOrParallelogram),
    }
}

/// `L` copies of the primitive outer normal for each side of lattice length `L`.
pub fn reduced_dual_degree(p: &LatticePolygon) -> TropicalDegree {
    let mut slopes = Vec::new();
    for s in p.sides() {
        let len = s.lattice_length();
        let d = s.primitive();
        let normal = Vec2::new(d.y, -d.x);
        slopes.extend(std::iter::repeat(normal).take(len as usize));
    }
    TropicalDegree::new(slopes)
}

pub fn satisfies_sufficient_admissibility(p: &LatticePolygon) -> Result<bool, PolygonError> {
    let prof = slice_profile(p)?;
    if !p.has_bottom_side() {
        return Ok(false);
    }
    let a0 = prof.a(0);
    let a1 = prof.heights.get(1).copied().unwrap_or(0);
    Ok(a0 >= a1 - 1)
}

/// Slopes of the non-horizontal sides within the unit strip `[r0+r−1, r0+r]`,
/// as `(t, u)` where the left boundary moves by `t` and the right by `u`.
pub fn strip_shifts(p: &LatticePolygon, r: usize) -> (i64, i64) {
    let r0 = p.min_y();
    let (l0, h0) = slice_bounds(p, r0 + r as i64 - 1);
    let (l1, h1) = slice_bounds(p, r0 + r as i64);
    ((l1 - l0).to_integer(), (h1 - h0).to_integer())
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[i64; 2]>,
}

#[derive(Debug, Error)]
pub enum PolygonParseError {
    #[error("malformed polygon file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] PolygonError),
}

pub fn polygon_from_json(text: &str) -> Result<LatticePolygon, PolygonParseError> {
    let file: PolygonFile = serde_json::from_str(text)?;
    let pts: Vec<_> = file.vertices.into_iter().map(Vec2::from).collect();
    Ok(validate_polygon(&pts)?)
}

/// Shorthand for building test and example polygons.
pub fn polygon(pts: &[(i64, i64)]) -> Result<LatticePolygon, PolygonError> {
    let v: Vec<_> = pts.iter().map(|&(x, y)| Vec2::new(x, y)).collect();
    validate_polygon(&v)
}

pub fn triangle(d: i64) -> LatticePolygon {
    polygon(&[(0, 0), (d, 0), (0, d)]).expect("d > 0")
}

/// Greatest common divisor helper shared with callers that work on raw integers.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::new(x, y)
    }

    #[test]
    fn validation_examples() {
        let t = polygon(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(t.len(), 3);
        assert!(matches!(
            polygon(&[(0, 0), (2, 0), (1, 0), (0, 2)]),
            Err(PolygonError::NotConvex(_))
        ));
        assert_eq!(triangle(3).area(), Ratio::new(9, 2));
        assert_eq!(polygon(&[(0, 0), (1, 1)]), Err(PolygonError::TooFewVertices));
        assert_eq!(polygon(&[(0, 0), (1, 1), (2, 2)]), Err(PolygonError::Degenerate));
    }

    #[test]
    fn normalization_orients_and_rotates() {
        let p = polygon(&[(1, 1), (0, 1), (0, 0), (1, 0)]).unwrap();
        assert_eq!(p.vertices(), &[v(0, 0), v(1, 0), v(1, 1), v(0, 1)]);
    }

    #[test]
    fn h_transverse_examples() {
        assert!(is_h_transverse(&triangle(3)));
        assert!(is_h_transverse(&polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()));
        // every horizontal lattice line meets (3, 1)-sides in lattice points
        assert!(is_h_transverse(&polygon(&[(0, 0), (3, 1), (0, 2)]).unwrap()));
        assert!(is_h_transverse(&polygon(&[(0, 0), (0, 2), (2, 2), (6, 0)]).unwrap()));
        assert!(!is_h_transverse(&polygon(&[(0, 0), (2, 0), (1, 2)]).unwrap()));
    }

    #[test]
    fn slices() {
        let p = slice_profile(&triangle(2)).unwrap();
        assert_eq!((p.r0, p.heights.clone()), (0, vec![2, 1, 0]));
        let sq = polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(slice_profile(&sq).unwrap().heights, vec![1, 1]);
        let tr = polygon(&[(0, 0), (0, 1), (2, 1), (3, 0)]).unwrap();
        assert_eq!(slice_profile(&tr).unwrap().heights, vec![3, 2]);
    }

    #[test]
    fn interior_counts() {
        assert_eq!(interior_lattice_count(&triangle(1)), 0);
        assert_eq!(interior_lattice_count(&triangle(3)), 1);
        let sq = polygon(&[(0, 0), (3, 0), (3, 3), (0, 3)]).unwrap();
        assert_eq!(interior_lattice_count(&sq), 4);
    }

    #[test]
    fn primitive_cells() {
        assert_eq!(is_primitive_cell(&triangle(1)), Ok(true));
        assert_eq!(is_primitive_cell(&polygon(&[(0, 0), (2, 0), (0, 1)]).unwrap()), Ok(false));
        let sq = polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(is_primitive_cell(&sq), Ok(true));
        let pent = polygon(&[(0, 0), (2, 0), (2, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(is_primitive_cell(&pent), Err(PolygonError::NotTriangleOrParallelogram));
    }

    #[test]
    fn dual_degrees() {
        assert_eq!(
            reduced_dual_degree(&triangle(1)),
            TropicalDegree::new(vec![v(-1, 0), v(0, -1), v(1, 1)])
        );
        let d2 = reduced_dual_degree(&triangle(2));
        assert_eq!(d2.count(v(-1, 0)), 2);
        assert_eq!(d2.count(v(0, -1)), 2);
        assert_eq!(d2.count(v(1, 1)), 2);
        let sq = polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(
            reduced_dual_degree(&sq),
            TropicalDegree::new(vec![v(1, 0), v(-1, 0), v(0, 1), v(0, -1)])
        );
    }

    #[test]
    fn dual_polygon_inverts_degree() {
        let tr = polygon(&[(0, 0), (0, 1), (2, 1), (3, 0)]).unwrap();
        assert_eq!(reduced_dual_degree(&tr).dual_polygon().unwrap(), tr);
        assert_eq!(reduced_dual_degree(&triangle(3)).dual_polygon().unwrap(), triangle(3));
    }

    #[test]
    fn sufficient_admissibility() {
        assert_eq!(satisfies_sufficient_admissibility(&triangle(4)), Ok(true));
        let tr = polygon(&[(0, 0), (0, 1), (1, 1), (2, 0)]).unwrap();
        assert_eq!(satisfies_sufficient_admissibility(&tr), Ok(true));
        let diamond = polygon(&[(0, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(satisfies_sufficient_admissibility(&diamond), Ok(false));
    }

    #[test]
    fn strip_shift_of_triangle() {
        assert_eq!(strip_shifts(&triangle(3), 1), (0, -1));
    }

    #[test]
    fn json_rejects_fractions() {
        assert!(polygon_from_json(r#"{"vertices":[[0,0],[1.5,0],[0,1]]}"#).is_err());
        let p = polygon_from_json(r#"{"vertices":[[0,0],[3,0],[0,3]]}"#).unwrap();
        assert_eq!(p, triangle(3));
    }
}
