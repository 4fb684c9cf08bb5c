//! The rewriting strategy: resolve self-intersections, minimize the
//! multiplicity sequence, then sort elevators layer by layer.

use super::certificate::Side;
use super::session::Session;
use super::MoveError;

/// A lexicographically decreasing rewrite inside layer `r`, identified by tags.
#[derive(Clone, Copy, Debug)]
enum Rewrite {
    /// Moves `w(c)` from `a` to its right neighbour `b`, routed through `c`.
    Transfer { a: usize, c: usize, b: usize, below: bool },
    /// Folds `a` into its neighbour `b` and splits `c` one layer down.
    CycleDown { a: usize, c: usize, b: usize },
}

impl Session {
    /// Positions of elevators starting at each floor `0..=H`, left to right.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.height() + 1];
        for (i, e) in self.plan.elevators.iter().enumerate() {
            if e.lower < out.len() {
                out[e.lower].push(i);
            }
        }
        out
    }

    pub fn layer_weights(&self) -> Vec<Vec<i64>> {
        self.layers()
            .iter()
            .map(|l| l.iter().map(|&i| self.plan.elevators[i].weight).collect())
            .collect()
    }

    pub fn is_consecutive(&self) -> bool {
        self.plan.elevators.iter().all(|e| e.upper == e.lower + 1)
    }

    /// Two x-neighbouring (among themselves) elevators leaving a real floor on
    /// the same side towards distinct floors.
    fn same_side_pair(&self) -> Option<(usize, usize)> {
        let e = &self.plan.elevators;
        for k in 1..=self.height() {
            for up in [true, false] {
                let here: Vec<usize> =
                    (0..e.len()).filter(|&i| if up { e[i].lower == k } else { e[i].upper == k }).collect();
                let far = |i: usize| if up { e[i].upper } else { e[i].lower };
                let mut ends: Vec<usize> = here.iter().map(|&i| far(i)).collect();
                ends.sort_unstable();
                ends.dedup();
                if ends.len() < 2 {
                    continue;
                }
                let (s, r) = if up { (ends[0], ends[1]) } else { (ends[ends.len() - 1], ends[ends.len() - 2]) };
                let pair: Vec<usize> = here.into_iter().filter(|&i| far(i) == s || far(i) == r).collect();
                if let Some(w) = pair.windows(2).find(|w| far(w[0]) != far(w[1])) {
                    return Some((w[0], w[1]));
                }
            }
        }
        None
    }

    pub fn resolve(&mut self) -> Result<(), MoveError> {
        while let Some((p, q)) = self.same_side_pair() {
            let before = self.plan.crossing_count();
            for j in (p + 1..q).rev() {
                self.swap(j)?;
            }
            self.merge(p)?;
            debug_assert!(self.plan.crossing_count() < before);
        }
        if !self.is_consecutive() {
            return Err(MoveError::Internal("adjacency not consecutive after resolution".into()));
        }
        loop {
            let h = self.height();
            let crossing = (1..h).find_map(|k| {
                let f = |r: usize| self.plan.floor(r);
                if f(k).left.slope.y > f(k + 1).left.slope.y {
                    Some((k, Side::Left))
                } else if f(k).right.slope.y > f(k + 1).right.slope.y {
                    Some((k, Side::Right))
                } else {
                    None
                }
            });
            let Some((k, side)) = crossing else { break };
            let touching: Vec<usize> = (0..self.plan.elevators.len())
                .filter(|&i| {
                    let e = &self.plan.elevators[i];
                    e.touches(k) || e.touches(k + 1)
                })
                .collect();
            let layer: Vec<usize> = self.layers()[k].clone();
            match side {
                Side::Left => {
                    let (pe, first) = (layer[0], touching[0]);
                    for j in (first..pe).rev() {
                        self.swap(j)?;
                    }
                }
                Side::Right => {
                    let (pe, last) = (*layer.last().unwrap(), *touching.last().unwrap());
                    for j in pe..last {
                        self.swap(j)?;
                    }
                }
            }
            self.merge_legs(k, side)?;
        }
        Ok(())
    }

    fn candidates(&self) -> Vec<(Vec<i64>, Rewrite)> {
        let layers = self.layers();
        let weights = self.layer_weights();
        let h = self.height();
        let w = |i: usize| self.plan.elevators[i].weight;
        let tag = |i: usize| self.tags[i];
        let flat = |l: &Vec<Vec<i64>>| l.iter().flatten().copied().collect::<Vec<i64>>();
        let mut out = Vec::new();
        for r in 1..h {
            let lay = &layers[r];
            for idx in 0..lay.len() {
                let a = lay[idx];
                if idx + 1 < lay.len() {
                    let b = lay[idx + 1];
                    for (below, side) in [(true, r - 1), (false, r + 1)] {
                        for &c in &layers[side] {
                            if w(c) < w(a) {
                                let mut nl = weights.clone();
                                nl[r][idx] -= w(c);
                                nl[r][idx + 1] += w(c);
                                out.push((flat(&nl), Rewrite::Transfer { a: tag(a), c: tag(c), b: tag(b), below }));
                            }
                        }
                    }
                }
                if r < 2 {
                    continue;
                }
                for nb in [idx.wrapping_sub(1), idx + 1] {
                    let Some(&b) = lay.get(nb) else { continue };
                    for (ci, &c) in layers[r - 1].iter().enumerate() {
                        if w(a) < w(c) {
                            let mut nl = weights.clone();
                            nl[r][nb] += w(a);
                            nl[r].remove(idx);
                            nl[r - 1][ci] -= w(a);
                            let at = if nb > idx { ci + 1 } else { ci };
                            nl[r - 1].insert(at, w(a));
                            out.push((flat(&nl), Rewrite::CycleDown { a: tag(a), c: tag(c), b: tag(b) }));
                        }
                    }
                }
            }
        }
        out
    }

    fn apply(&mut self, rw: Rewrite) -> Result<(), MoveError> {
        match rw {
            Rewrite::Transfer { a, c, b, below } => {
                self.arrange(&[a, c, b])?;
                let p = self.position(a);
                self.split(p, !below)?;
                self.merge(p + 1)
            }
            Rewrite::CycleDown { a, c, b } => {
                if self.position(b) > self.position(a) {
                    self.arrange(&[c, a, b])?;
                    let p = self.position(c);
                    self.split(p, true)?;
                    self.merge(p + 1)
                } else {
                    self.arrange(&[b, a, c])?;
                    let p = self.position(b);
                    self.split(p + 1, true)?;
                    self.merge(p)
                }
            }
        }
    }

    /// Greedy descent of the multiplicity sequence; requires a curve without
    /// self-intersections and ends without them.
    pub fn minimize(&mut self) -> Result<(), MoveError> {
        loop {
            let current: Vec<i64> = self.layer_weights().into_iter().flatten().collect();
            let best = self
                .candidates()
                .into_iter()
                .filter(|(seq, _)| *seq < current)
                .min_by(|x, y| x.0.cmp(&y.0));
            let Some((seq, rw)) = best else { return Ok(()) };
            self.apply(rw)?;
            let now: Vec<i64> = self.layer_weights().into_iter().flatten().collect();
            if now != seq {
                return Err(MoveError::Internal(format!("rewrite produced {now:?}, expected {seq:?}")));
            }
        }
    }

    /// Orders elevators by layer; leg layers by weight.
    pub fn sort_layers(&mut self) -> Result<(), MoveError> {
        let h = self.height();
        let mut order: Vec<usize> = (0..self.tags.len()).collect();
        let key = |i: usize| {
            let e = &self.plan.elevators[i];
            (e.lower, if e.lower == 0 || e.lower == h { e.weight } else { 0 })
        };
        order.sort_by_key(|&i| key(i));
        let target: Vec<usize> = order.into_iter().map(|i| self.tags[i]).collect();
        self.reorder(&target)
    }
}
