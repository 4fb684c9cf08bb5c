//! Exact linear algebra: rank and a phase-one simplex for positivity.

use crate::scalar::Scalar;

/// Rank of a dense matrix by fraction-free-style Gaussian elimination.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone() / pivot.clone();
                for k in c..ncols {
                    let t = m[r][k].clone() * f.clone();
                    m[i][k] = m[i][k].clone() - t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Finds `x` with `a·x = 0` and every `x_j ≥ 1`, or `None` if there is none.
///
/// Substitutes `x = 1 + z` and runs phase one of the simplex method with
/// Bland's rule on `a·z = -a·1`, `z ≥ 0`.
pub fn positive_kernel_point<S: Scalar>(a: &[Vec<S>], n: usize) -> Option<Vec<S>> {
    let m = a.len();
    if m == 0 {
        return Some(vec![S::one(); n]);
    }
    let width = n + m + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<S>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut b = S::zero();
        for v in row {
            b = b - v.clone();
        }
        let flip = b.is_negative();
        let mut line = vec![S::zero(); width];
        for j in 0..n {
            line[j] = if flip { -row[j].clone() } else { row[j].clone() };
        }
        line[n + i] = S::one();
        line[rhs] = if flip { -b } else { b };
        t.push(line);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // reduced cost of column j is -(sum over rows with artificial basis of t[i][j])
        let mut entering = None;
        for j in 0..n + m {
            if basis.contains(&j) {
                continue;
            }
            let mut c = if j >= n { S::one() } else { S::zero() };
            for i in 0..m {
                if basis[i] >= n {
                    c = c - t[i][j].clone();
                }
            }
            if c.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, S)> = None;
        for i in 0..m {
            if t[i][j].is_positive() {
                let ratio = t[i][rhs].clone() / t[i][j].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let (p, _) = leave?;
        let piv = t[p][j].clone();
        for v in t[p].iter_mut() {
            *v = v.clone() / piv.clone();
        }
        for i in 0..m {
            if i != p && !t[i][j].is_zero() {
                let f = t[i][j].clone();
                for k in 0..width {
                    let d = t[p][k].clone() * f.clone();
                    t[i][k] = t[i][k].clone() - d;
                }
            }
        }
        basis[p] = j;
    }
    for i in 0..m {
        if basis[i] >= n && !t[i][rhs].is_zero() {
            return None;
        }
    }
    let mut x = vec![S::one(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = S::one() + t[i][rhs].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]])), 2);
        assert_eq!(rank::<Rational>(&[]), 0);
    }

    #[test]
    fn positive_kernel() {
        // x0 - 2 x1 = 0 → (2,1) scaled to ≥ 1
        let a = m(&[&[1, -2]]);
        let x = positive_kernel_point(&a, 2).unwrap();
        assert_eq!(x[0], rat(2) * x[1].clone());
        assert!(x.iter().all(|v| *v >= rat(1)));
        // x0 + x1 = 0 has no positive solution
        assert!(positive_kernel_point(&m(&[&[1, 1]]), 2).is_none());
    }
}
