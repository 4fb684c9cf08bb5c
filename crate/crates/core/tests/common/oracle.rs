//! Brute-force Severi degrees: every weighted floor/elevator structure, every
//! vertical order of its point slots, weights squared. Shares nothing with
//! the library's enumeration.

use std::collections::{BTreeMap, HashSet};

use tropical_floors::polygon::{slice_profile, strip_shifts, LatticePolygon};

fn permutations(v: &[i64]) -> HashSet<Vec<i64>> {
    if v.len() <= 1 {
        return [v.to_vec()].into_iter().collect();
    }
    let mut out = HashSet::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.insert(p);
        }
    }
    out
}

/// Multisets of size `k` from `0..n`, as nondecreasing index lists.
fn multisets(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in from..n {
        cur.push(i);
        multisets(n, k, i, cur, out);
        cur.pop();
    }
}

/// Slot labels: floors are `-(r)`, elevators the index of their class.
fn count_words(h: usize, classes: &[(usize, usize, i64)], chosen: &[usize]) -> u128 {
    let mut labels: Vec<i64> = (1..=h as i64).map(|r| -r).collect();
    labels.extend(chosen.iter().map(|&c| c as i64));
    labels.sort();
    let mut count = 0u128;
    let mut word = labels.clone();
    loop {
        let at = |r: usize| -> i64 {
            if r == 0 {
                -1
            } else if r == h + 1 {
                word.len() as i64
            } else {
                word.iter().position(|&x| x == -(r as i64)).unwrap() as i64
            }
        };
        let floors_ordered = (1..h).all(|r| at(r) < at(r + 1));
        let ok = floors_ordered
            && word.iter().enumerate().filter(|(_, &x)| x >= 0).all(|(i, &x)| {
                let (l, u, _) = classes[x as usize];
                at(l) < i as i64 && (i as i64) < at(u)
            });
        if ok {
            count += 1;
        }
        // next lexicographic permutation
        let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else { break };
        let j = (i..word.len()).rev().find(|&j| word[i - 1] < word[j]).unwrap();
        word.swap(i - 1, j);
        word[i..].reverse();
    }
    count
}

pub fn severi_oracle(p: &LatticePolygon, g: i64) -> u128 {
    let prof = slice_profile(p).unwrap();
    let h = prof.height();
    let a: Vec<i64> = (0..=h).map(|r| prof.a(r)).collect();
    let wmax = *a.iter().max().unwrap();
    let mut classes = Vec::new();
    for l in 0..=h {
        for u in l + 1..=h + 1 {
            if l == 0 && u == h + 1 {
                continue;
            }
            let leg = l == 0 || u == h + 1;
            for w in 1..=(if leg { 1 } else { wmax }) {
                classes.push((l, u, w));
            }
        }
    }
    let lefts: Vec<i64> = (1..=h).map(|r| strip_shifts(p, r).0).collect();
    let rights: Vec<i64> = (1..=h).map(|r| -strip_shifts(p, r).1).collect();
    let n_legs = 2 * h as i64 + a[0] + a[h];
    let slots = (n_legs + g - 1) as usize;
    let m = slots - h;
    let mut all = Vec::new();
    multisets(classes.len(), m, 0, &mut vec![], &mut all);
    let mut total = 0;
    for ls in permutations(&lefts) {
        for rs in permutations(&rights) {
            for chosen in &all {
                let els: Vec<(usize, usize, i64)> = chosen.iter().map(|&i| classes[i]).collect();
                let down = els.iter().filter(|e| e.0 == 0).count() as i64;
                let up = els.iter().filter(|e| e.1 == h + 1).count() as i64;
                let bounded = els.iter().filter(|e| e.0 != 0 && e.1 != h + 1).count() as i64;
                if down != a[0] || up != a[h] || bounded != h as i64 - 1 + g {
                    continue;
                }
                let balanced = (1..=h).all(|r| {
                    let inflow: i64 = els.iter().filter(|e| e.1 == r).map(|e| e.2).sum();
                    let outflow: i64 = els.iter().filter(|e| e.0 == r).map(|e| e.2).sum();
                    let touched = els.iter().any(|e| e.0 == r || e.1 == r);
                    touched && inflow - outflow == ls[r - 1] + rs[r - 1]
                });
                if !balanced {
                    continue;
                }
                // connected through bounded elevators
                let mut comp: BTreeMap<usize, usize> = (1..=h).map(|r| (r, r)).collect();
                for _ in 0..h {
                    for e in els.iter().filter(|e| e.0 != 0 && e.1 != h + 1) {
                        let k = comp[&e.0].min(comp[&e.1]);
                        comp.insert(e.0, k);
                        comp.insert(e.1, k);
                    }
                }
                if comp.values().any(|&k| k != 1) {
                    continue;
                }
                let mult: u128 = els.iter().filter(|e| e.0 != 0 && e.1 != h + 1).map(|e| (e.2 * e.2) as u128).product();
                total += mult * count_words(h, &classes, chosen);
            }
        }
    }
    total
}
