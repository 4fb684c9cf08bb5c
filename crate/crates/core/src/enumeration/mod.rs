//! Exhaustive ssfd strata for small polygons, Severi degrees and the wall
//! adjacency graph.

mod diagram;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::curve::{combinatorial_type, is_simple, mikhalkin_multiplicity, wall_resolutions, CombinatorialType, TypeFile};
use crate::floors::{default_lambda, FloorPlan};
use crate::moves::settle;
use crate::polygon::{interior_lattice_count, is_h_transverse, reduced_dual_degree, LatticePolygon};
use crate::scalar::Rational;
use crate::Curve;

pub use diagram::{floor_diagrams, marking_count};
pub(crate) use diagram::distinct_permutations;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("polygon is not h-transverse")]
    NotHTransverse,
    #[error("genus {0} out of range")]
    GenusOutOfRange(i64),
    #[error("search budget of {0} candidates exceeded")]
    BudgetExceeded(usize),
    #[error("floor diagram has no simple stretched witness: {0}")]
    Unrealizable(String),
}

/// An enumerated stratum with a stretched witness.
#[derive(Clone, Debug)]
pub struct SsfdStratum {
    pub ty: CombinatorialType,
    pub witness: Curve,
    pub plan: FloorPlan,
    pub multiplicity: u64,
}

/// Candidates whose witness could not be solved or was not simple.
#[derive(Clone, Debug, Default)]
pub struct Audit {
    pub candidates: usize,
    pub rejected: Vec<String>,
}

fn check(p: &LatticePolygon, g: i64) -> Result<(), EnumError> {
    if !is_h_transverse(p) {
        return Err(EnumError::NotHTransverse);
    }
    if g < 0 || g > interior_lattice_count(p) {
        return Err(EnumError::GenusOutOfRange(g));
    }
    Ok(())
}

/// For each floor, the sequence of elevators attached to it, left to right.
fn attachment_key(plan: &FloorPlan) -> Vec<Vec<(usize, usize, i64)>> {
    (1..=plan.height())
        .map(|r| {
            plan.attached(r)
                .into_iter()
                .map(|i| {
                    let e = &plan.elevators[i];
                    (e.lower, e.upper, e.weight)
                })
                .collect()
        })
        .collect()
}

/// Left-to-right orders of the elevators of `d` that give distinct floor
/// attachment sequences.
pub fn interleavings(d: &FloorPlan) -> Vec<FloorPlan> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let idx: Vec<usize> = (0..d.elevators.len()).collect();
    // permuting indices of identical elevators changes only leg ids
    let class: Vec<(usize, usize, i64)> = d.elevators.iter().map(|e| (e.lower, e.upper, e.weight)).collect();
    for perm in distinct_permutations(&class) {
        let mut pool: Vec<Option<usize>> = idx.iter().map(|&i| Some(i)).collect();
        let mut q = d.clone();
        q.elevators = perm
            .iter()
            .map(|c| {
                let slot = pool.iter_mut().find(|s| s.is_some_and(|i| class[i] == *c)).expect("class member");
                d.elevators[slot.take().expect("free")].clone()
            })
            .collect();
        if seen.insert(attachment_key(&q)) {
            out.push(q);
        }
    }
    out
}

fn realize(mut plan: FloorPlan, lambda: &Rational) -> Result<SsfdStratum, String> {
    let real = settle(&mut plan, lambda).map_err(|e| e.to_string())?;
    if !is_simple(&real.curve) {
        return Err("not simple".into());
    }
    let ty = combinatorial_type(&real.curve);
    if !ty.is_nice() {
        return Err("not nice".into());
    }
    let multiplicity = mikhalkin_multiplicity(&real.curve).map_err(|e| e.to_string())?;
    Ok(SsfdStratum { ty, witness: real.curve, plan, multiplicity })
}

/// All ssfd strata of genus `g` dual to `p`, up to isomorphism (legs of equal
/// slope interchangeable), with an audit of discarded candidates.
pub fn enumerate_ssfd_strata(
    p: &LatticePolygon,
    g: i64,
    budget: Option<usize>,
) -> Result<(Vec<SsfdStratum>, Audit), EnumError> {
    check(p, g)?;
    let lambda = default_lambda(&reduced_dual_degree(p));
    let candidates: Vec<FloorPlan> = floor_diagrams(p, g)?.iter().flat_map(interleavings).collect();
    if budget.is_some_and(|b| candidates.len() > b) {
        return Err(EnumError::BudgetExceeded(budget.unwrap_or_default()));
    }
    let solved: Vec<Result<SsfdStratum, String>> =
        candidates.par_iter().map(|c| realize(c.clone(), &lambda)).collect();
    let mut audit = Audit { candidates: candidates.len(), rejected: vec![] };
    let mut seen = BTreeMap::new();
    for (i, s) in solved.into_iter().enumerate() {
        match s {
            Ok(s) => {
                seen.entry(s.ty.canonical_form(true)).or_insert(s);
            }
            Err(e) => audit.rejected.push(format!("candidate {i}: {e}")),
        }
    }
    Ok((seen.into_values().collect(), audit))
}

pub fn enumerate_ssfd_types(p: &LatticePolygon, g: i64) -> Result<Vec<CombinatorialType>, EnumError> {
    Ok(enumerate_ssfd_strata(p, g, None)?.0.into_iter().map(|s| s.ty).collect())
}

/// Count of genus-`g` curves dual to `p` through vertically stretched points
/// in general position, with Mikhalkin multiplicities.
pub fn severi_degree(p: &LatticePolygon, g: i64) -> Result<u128, EnumError> {
    check(p, g)?;
    let lambda = default_lambda(&reduced_dual_degree(p));
    let terms: Vec<Result<u128, String>> = floor_diagrams(p, g)?
        .par_iter()
        .map(|d| {
            let s = realize(d.clone(), &lambda)?;
            Ok(marking_count(d) * s.multiplicity as u128)
        })
        .collect();
    terms.into_iter().map(|t| t.map_err(EnumError::Unrealizable)).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct WallGraph {
    /// Neighbours through one shared simple wall.
    pub adjacency: Vec<Vec<usize>>,
    /// Neighbours through a wall, an intermediate nice stratum and a second wall.
    pub augmented: Vec<Vec<usize>>,
    pub connected: bool,
    pub directly_connected: bool,
}

fn walls_of(t: &CombinatorialType) -> Vec<CombinatorialType> {
    (0..t.edges.len()).filter_map(|e| t.contract(e)).filter(|w| w.is_simple_wall()).collect()
}

fn components(adj: &[Vec<usize>]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut n = 0;
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        n += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    n
}

/// Wall adjacency over the given strata.
pub fn wall_graph(types: &[CombinatorialType]) -> WallGraph {
    let n = types.len();
    let index: HashMap<Vec<i64>, usize> = types.iter().enumerate().map(|(i, t)| (t.canonical_form(true), i)).collect();
    let walls: Vec<Vec<Vec<i64>>> =
        types.par_iter().map(|t| walls_of(t).iter().map(|w| w.canonical_form(true)).collect()).collect();
    let mut by_wall: HashMap<&Vec<i64>, BTreeSet<usize>> = HashMap::new();
    for (i, ws) in walls.iter().enumerate() {
        for w in ws {
            by_wall.entry(w).or_default().insert(i);
        }
    }
    let mut adjacency = vec![BTreeSet::new(); n];
    for nodes in by_wall.values() {
        for &a in nodes {
            adjacency[a].extend(nodes.iter().copied().filter(|&b| b != a));
        }
    }
    // through one intermediate nice stratum outside the list
    let via: Vec<BTreeSet<usize>> = types
        .par_iter()
        .map(|t| {
            let mut out = BTreeSet::new();
            for w in walls_of(t) {
                for r in wall_resolutions(&w).unwrap_or_default() {
                    let Some(x) = r.ty.filter(|_| r.nice) else { continue };
                    if index.contains_key(&x.canonical_form(true)) {
                        continue;
                    }
                    for w2 in walls_of(&x) {
                        if let Some(nodes) = by_wall.get(&w2.canonical_form(true)) {
                            out.extend(nodes.iter().copied());
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut augmented = adjacency.clone();
    for (a, v) in via.into_iter().enumerate() {
        for b in v {
            if a != b {
                augmented[a].insert(b);
                augmented[b].insert(a);
            }
        }
    }
    let adjacency: Vec<Vec<usize>> = adjacency.into_iter().map(|s| s.into_iter().collect()).collect();
    let augmented: Vec<Vec<usize>> = augmented.into_iter().map(|s| s.into_iter().collect()).collect();
    WallGraph {
        connected: components(&augmented) <= 1,
        directly_connected: components(&adjacency) <= 1,
        adjacency,
        augmented,
    }
}

pub fn wall_adjacency_graph(p: &LatticePolygon, g: i64) -> Result<(Vec<CombinatorialType>, WallGraph), EnumError> {
    let types = enumerate_ssfd_types(p, g)?;
    let graph = wall_graph(&types);
    Ok((types, graph))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    #[serde(rename = "type")]
    pub ty: TypeFile,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub genus: i64,
    pub types: Vec<ReportEntry>,
    pub total_types: usize,
    pub total_multiplicity: u64,
    pub severi_degree: u128,
    pub candidates: usize,
    pub rejected: Vec<String>,
    pub wall_graph: WallGraph,
}

pub fn enumeration_report(p: &LatticePolygon, g: i64) -> Result<EnumerationReport, EnumError> {
    let (strata, audit) = enumerate_ssfd_strata(p, g, None)?;
    let types: Vec<CombinatorialType> = strata.iter().map(|s| s.ty.clone()).collect();
    Ok(EnumerationReport {
        genus: g,
        total_types: strata.len(),
        total_multiplicity: strata.iter().map(|s| s.multiplicity).sum(),
        severi_degree: severi_degree(p, g)?,
        types: strata.iter().map(|s| ReportEntry { ty: TypeFile::from(&s.ty), multiplicity: s.multiplicity }).collect(),
        candidates: audit.candidates,
        rejected: audit.rejected,
        wall_graph: wall_graph(&types),
    })
}

#[cfg(test)]
mod tests;
