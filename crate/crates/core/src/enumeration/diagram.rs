//! Floor diagrams: floors with their side legs, in vertical order, and the
//! multiset of elevators joining them.

use std::collections::BTreeMap;

use crate::floors::{FloorPlan, PlanElevator, PlanFloor, PlanLeg};
use crate::polygon::{slice_profile, strip_shifts, LatticePolygon};
use crate::scalar::Rational;
use crate::Vec2;

use super::EnumError;

/// Lexicographic successor; `false` after the last permutation.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[i - 1] < v[j]).expect("successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub(crate) fn distinct_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut v = items.to_vec();
    v.sort();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

/// Partitions of `n` into nonincreasing positive parts.
fn partitions(n: i64, max: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Sub-multisets of a multiset given as `(item, count)` pairs.
fn sub_multisets<T: Clone>(items: &[(T, usize)]) -> Vec<Vec<(T, usize)>> {
    let mut out = vec![vec![]];
    for (item, count) in items {
        out = out
            .into_iter()
            .flat_map(|base| {
                (0..=*count).map(move |k| {
                    let mut b = base.clone();
                    if k > 0 {
                        b.push((item.clone(), k));
                    }
                    b
                })
            })
            .collect();
    }
    out
}

struct Search {
    h: usize,
    flux: Vec<i64>,
    bounded: usize,
    out: Vec<Vec<(usize, usize, i64)>>,
}

impl Search {
    /// `open`: elevators crossing the band below floor `r`, as `(lower, weight) → count`.
    fn go(&mut self, r: usize, open: BTreeMap<(usize, i64), usize>, done: Vec<(usize, usize, i64)>) {
        let classes: Vec<_> = open.iter().map(|(k, v)| (*k, *v)).collect();
        for end in sub_multisets(&classes) {
            let mut rest = open.clone();
            let mut now = done.clone();
            for &((l, w), k) in &end {
                *rest.get_mut(&(l, w)).expect("open") -= k;
                now.extend(std::iter::repeat((l, r, w)).take(k));
            }
            rest.retain(|_, k| *k > 0);
            let kept: i64 = rest.iter().map(|((_, w), k)| w * *k as i64).sum();
            if rest.keys().any(|&(l, _)| l == 0 && r == self.h) {
                continue;
            }
            let fresh = self.flux[r] - kept;
            if fresh < 0 {
                continue;
            }
            let max = if r == self.h { 1 } else { fresh };
            for parts in partitions(fresh, max) {
                if end.is_empty() && parts.is_empty() {
                    continue; // a floor needs a vertex
                }
                let mut next = rest.clone();
                for &w in &parts {
                    *next.entry((r, w)).or_default() += 1;
                }
                let bounded = now.iter().filter(|e| e.0 != 0).count();
                if bounded > self.bounded {
                    continue;
                }
                if r == self.h {
                    if next.keys().any(|&(_, w)| w != 1) || bounded != self.bounded {
                        continue;
                    }
                    let mut all = now.clone();
                    for (&(l, w), &k) in &next {
                        all.extend(std::iter::repeat((l, r + 1, w)).take(k));
                    }
                    all.sort();
                    self.out.push(all);
                } else {
                    self.go(r + 1, next, now.clone());
                }
            }
        }
    }
}

fn connected(h: usize, elevators: &[(usize, usize, i64)]) -> bool {
    let mut parent: Vec<usize> = (0..=h + 1).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(l, u, _) in elevators {
        if l != 0 && u != h + 1 {
            let (a, b) = (find(&mut parent, l), find(&mut parent, u));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 1);
    (1..=h).all(|r| find(&mut parent, r) == root)
}

/// All floor diagrams of genus `g` dual to `p`, with floors numbered bottom
/// up. Elevators are sorted by `(lower, upper, weight)`.
pub fn floor_diagrams(p: &LatticePolygon, g: i64) -> Result<Vec<FloorPlan>, EnumError> {
    let prof = slice_profile(p).map_err(|_| EnumError::NotHTransverse)?;
    let h = prof.height();
    if g < 0 {
        return Ok(vec![]);
    }
    let sides: Vec<(i64, i64)> = (1..=h).map(|r| strip_shifts(p, r)).collect();
    let lefts: Vec<i64> = sides.iter().map(|s| s.0).collect();
    let rights: Vec<i64> = sides.iter().map(|s| -s.1).collect();
    let bounded = h - 1 + g as usize;
    let mut out = Vec::new();
    for ls in distinct_permutations(&lefts) {
        for rs in distinct_permutations(&rights) {
            // inflow minus outflow at floor r is c + a' for legs (−1, a'), (1, c)
            let mut flux = vec![prof.a(0)];
            for r in 0..h {
                flux.push(flux[r] - (rs[r] + ls[r]));
            }
            if flux.iter().any(|&f| f < 0) || (1..h).any(|r| flux[r] == 0) {
                continue;
            }
            let mut s = Search { h, flux, bounded, out: vec![] };
            let mut open = BTreeMap::new();
            if prof.a(0) > 0 {
                open.insert((0, 1), prof.a(0) as usize);
            }
            s.go(1, open, vec![]);
            for els in s.out {
                if !connected(h, &els) {
                    continue;
                }
                let floors = (1..=h)
                    .map(|r| PlanFloor {
                        left: PlanLeg { id: 2 * (r - 1), slope: Vec2::new(-1, ls[r - 1]) },
                        right: PlanLeg { id: 2 * (r - 1) + 1, slope: Vec2::new(1, rs[r - 1]) },
                        base: Rational::default(),
                    })
                    .collect();
                let mut next = 2 * h;
                let elevators = els
                    .into_iter()
                    .map(|(lower, upper, weight)| {
                        let leg = (lower == 0 || upper == h + 1).then(|| {
                            next += 1;
                            next - 1
                        });
                        PlanElevator { lower, upper, weight, x: Rational::default(), leg }
                    })
                    .collect();
                out.push(FloorPlan { floors, elevators });
            }
        }
    }
    Ok(out)
}

/// Number of ways to put one point on every floor and elevator of `d` at
/// distinct heights, floors in their order, each elevator between its ends.
/// Elevators with equal ends and weight are interchangeable.
pub fn marking_count(d: &FloorPlan) -> u128 {
    let h = d.height();
    let mut classes: BTreeMap<(usize, usize, i64), usize> = BTreeMap::new();
    for e in &d.elevators {
        *classes.entry((e.lower, e.upper, e.weight)).or_default() += 1;
    }
    let classes: Vec<_> = classes.into_iter().collect();
    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
    }
    // distribute each class over the gaps it spans; a gap holding counts
    // n_1, n_2, … contributes the multinomial of its contents
    fn go(classes: &[((usize, usize, i64), usize)], gaps: &mut Vec<Vec<u128>>) -> u128 {
        let Some((&((l, u, _), n), rest)) = classes.split_first() else {
            return gaps
                .iter()
                .map(|g| {
                    let mut total = 0;
                    g.iter().fold(1u128, |acc, &k| {
                        total += k;
                        acc * binom(total, k)
                    })
                })
                .product();
        };
        let span: Vec<usize> = (l..u).collect();
        let mut sum = 0;
        let mut split = vec![0u128; span.len()];
        fn compositions(
            i: usize,
            left: u128,
            split: &mut Vec<u128>,
            span: &[usize],
            rest: &[((usize, usize, i64), usize)],
            gaps: &mut Vec<Vec<u128>>,
            sum: &mut u128,
        ) {
            if i + 1 == split.len() {
                split[i] = left;
                for (j, &g) in span.iter().enumerate() {
                    gaps[g].push(split[j]);
                }
                *sum += go(rest, gaps);
                for &g in span {
                    gaps[g].pop();
                }
                return;
            }
            for k in 0..=left {
                split[i] = k;
                compositions(i + 1, left - k, split, span, rest, gaps, sum);
            }
        }
        compositions(0, n as u128, &mut split, &span, rest, gaps, &mut sum);
        sum
    }
    go(&classes, &mut vec![Vec::new(); h + 1])
}
