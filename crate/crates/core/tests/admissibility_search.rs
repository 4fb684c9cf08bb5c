//! Search for a small polygon with a gappy admissibility pattern:
//! interior count 5, admissible exactly for g ∉ {1,2,3} and very
//! admissible exactly for g ∈ {4,5}. Run with `--ignored`.

use tropical_floors::constructor::{check_g_admissible, Admissibility};
use tropical_floors::polygon::{interior_lattice_count, validate_polygon, LatticePolygon};
use tropical_floors::Vec2;

/// Strict hull of the boundary points `(left[r], r)`, `(right[r], r)`.
fn from_profile(left: &[i64], right: &[i64]) -> Option<LatticePolygon> {
    let h = left.len() - 1;
    let mut pts: Vec<Vec2> = (0..=h).map(|r| Vec2::new(right[r], r as i64)).collect();
    pts.extend((0..=h).rev().map(|r| Vec2::new(left[r], r as i64)));
    pts.dedup();
    if pts.first() == pts.last() {
        pts.pop();
    }
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let n = pts.len();
        if let Some(i) = (0..n).find(|&i| (pts[i] - pts[(i + n - 1) % n]).det(pts[(i + 1) % n] - pts[i]) == 0) {
            pts.remove(i);
            changed = true;
        }
    }
    validate_polygon(&pts).ok()
}

fn profiles(h: usize, max_w: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    fn seqs(h: usize, lim: i64, convex: bool) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0]];
        for _ in 0..h {
            out = out
                .into_iter()
                .flat_map(|s| {
                    (-lim..=lim).filter_map(move |d| {
                        let k = s.len();
                        if k >= 2 {
                            let prev = s[k - 1] - s[k - 2];
                            if (convex && d < prev) || (!convex && d > prev) {
                                return None;
                            }
                        }
                        let mut t = s.clone();
                        t.push(s[k - 1] + d);
                        Some(t)
                    })
                })
                .collect();
        }
        out
    }
    let mut out = Vec::new();
    for l in seqs(h, 3, true) {
        for r0 in 0..=max_w {
            for r in seqs(h, 3, false) {
                let right: Vec<i64> = r.iter().map(|x| x + r0).collect();
                if (0..=h).all(|i| right[i] >= l[i]) && (right[0] > l[0] || right[h] > l[h]) {
                    out.push((l.clone(), right));
                }
            }
        }
    }
    out
}

#[test]
#[ignore]
fn search_gappy_admissibility_polygon() {
    let mut seen = std::collections::BTreeSet::new();
    for h in 2..=3 {
        for (l, r) in profiles(h, 6) {
            let Some(p) = from_profile(&l, &r) else { continue };
            if interior_lattice_count(&p) != 5 || !seen.insert(p.vertices().to_vec()) {
                continue;
            }
            let pattern: Option<Vec<(bool, bool)>> = (0..=5)
                .map(|g| match check_g_admissible(&p, g, Some(2000)).ok()? {
                    Admissibility::Yes { unimodular, .. } => Some((true, unimodular)),
                    Admissibility::No { .. } => Some((false, false)),
                    Admissibility::Unknown => None,
                })
                .collect();
            let Some(pattern) = pattern else { continue };
            let adm: Vec<bool> = pattern.iter().map(|x| x.0).collect();
            let very: Vec<bool> = pattern.iter().map(|x| x.1).collect();
            if adm == [true, false, false, false, true, true] && very == [false, false, false, false, true, true] {
                println!("match: {:?}", p.vertices());
            }
        }
    }
}
