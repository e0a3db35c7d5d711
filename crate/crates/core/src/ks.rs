//! Kochen-Specker colorability of finite ray sets.
//!
//! A coloring assigns 0 or 1 to every ray so that each context (an
//! orthogonal basis) has exactly one ray valued 1 and no two orthogonal
//! rays are both 1. These are the product and sum rules restricted to
//! resolutions of the identity by rank-one projectors.
//!
//! The search branches on contexts, picking the one with the fewest
//! undecided rays (ties broken by context order), and choosing a ray
//! forces all of its orthogonal neighbours to 0.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::Tolerance;
pub use crate::rayfile::Ray;
use crate::rayfile::{self, RayFile};

#[derive(Debug, Clone, PartialEq)]
pub struct KsInstance {
    dim: usize,
    rays: Vec<Ray>,
    contexts: Vec<Vec<usize>>,
    neighbours: Vec<Vec<usize>>,
}

impl KsInstance {
    /// Validates rays and contexts; with `contexts = None` the contexts are
    /// enumerated from the orthogonality graph.
    pub fn new(
        dim: usize,
        rays: Vec<Ray>,
        contexts: Option<Vec<Vec<usize>>>,
        tol: Tolerance,
    ) -> Result<Self> {
        for r in &rays {
            if r.vector.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.vector.dim(),
                });
            }
        }
        let adjacency = orthogonality_graph(&rays, tol)?;
        let contexts = match contexts {
            Some(cs) => {
                for c in &cs {
                    if c.len() != dim {
                        return Err(Error::InvalidArgument {
                            token: format!("{c:?}"),
                            message: format!("context has {} rays, expected {dim}", c.len()),
                        });
                    }
                    for (k, &a) in c.iter().enumerate() {
                        if a >= rays.len() {
                            return Err(Error::InvalidArgument {
                                token: a.to_string(),
                                message: "no such ray".into(),
                            });
                        }
                        for &b in &c[k + 1..] {
                            if b >= rays.len() || !adjacency[a][b] {
                                return Err(Error::NonOrthogonalContext {
                                    line: 0,
                                    first: rays[a].id.clone(),
                                    second: rays
                                        .get(b)
                                        .map_or_else(|| b.to_string(), |r| r.id.clone()),
                                });
                            }
                        }
                    }
                }
                cs
            }
            None => cliques_of_size(&adjacency, dim),
        };
        let neighbours = adjacency
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &o)| o)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let inst = Self {
            dim,
            rays,
            contexts,
            neighbours,
        };
        if let Some(r) = inst.uncovered_rays().first() {
            return Err(Error::InvalidArgument {
                token: inst.rays[*r].id.clone(),
                message: "ray belongs to no context".into(),
            });
        }
        Ok(inst)
    }

    /// Builds an instance from a parsed file, using its declared contexts
    /// unless there are none or `enumerate` is set.
    pub fn from_rayfile(file: &RayFile, enumerate: bool, tol: Tolerance) -> Result<Self> {
        let declared = (!enumerate && !file.contexts.is_empty())
            .then(|| file.contexts.iter().map(|c| c.rays.clone()).collect());
        Self::new(file.dim, file.rays.clone(), declared, tol).map_err(|e| match e {
            Error::InvalidArgument { token, message } if message == "ray belongs to no context" => {
                let line = file.ray_index(&token).map_or(0, |i| file.ray_lines[i]);
                Error::MalformedLine {
                    line,
                    message: format!("ray `{token}` belongs to no context"),
                }
            }
            other => other,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn neighbours(&self, ray: usize) -> &[usize] {
        &self.neighbours[ray]
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.neighbours[a].binary_search(&b).is_ok()
    }

    /// Number of orthogonal ray pairs.
    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn uncovered_rays(&self) -> Vec<usize> {
        let mut covered = vec![false; self.rays.len()];
        for c in &self.contexts {
            for &r in c {
                covered[r] = true;
            }
        }
        (0..self.rays.len()).filter(|&r| !covered[r]).collect()
    }

    /// Assignment keyed by ray id.
    pub fn assignment_by_id(&self, assignment: &[bool]) -> BTreeMap<String, bool> {
        self.rays
            .iter()
            .zip(assignment)
            .map(|(r, &v)| (r.id.clone(), v))
            .collect()
    }
}

/// Parses a ray file with the default tolerance.
pub fn parse_rayfile(text: &str) -> Result<KsInstance> {
    parse_rayfile_with(text, false, Tolerance::default())
}

pub fn parse_rayfile_with(text: &str, enumerate: bool, tol: Tolerance) -> Result<KsInstance> {
    KsInstance::from_rayfile(&rayfile::parse(text, tol)?, enumerate, tol)
}

/// `adjacency[i][j]` iff `|⟨rᵢ|rⱼ⟩| ≤ eps`.
pub fn orthogonality_graph(rays: &[Ray], tol: Tolerance) -> Result<Vec<Vec<bool>>> {
    let n = rays.len();
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let o = rays[i].vector.inner(&rays[j].vector)?.norm() <= tol.eps();
            adjacency[i][j] = o;
            adjacency[j][i] = o;
        }
    }
    Ok(adjacency)
}

/// All orthogonal bases among `rays`: the cliques of size `dim` in the
/// orthogonality graph, in lexicographic order of ray indices. In ℂᵈ no
/// clique exceeds `d` rays, so these are exactly the maximal cliques of
/// full size.
pub fn enumerate_contexts(rays: &[Ray], dim: usize, tol: Tolerance) -> Result<Vec<Vec<usize>>> {
    Ok(cliques_of_size(&orthogonality_graph(rays, tol)?, dim))
}

fn cliques_of_size(adjacency: &[Vec<bool>], size: usize) -> Vec<Vec<usize>> {
    fn extend(
        adj: &[Vec<bool>],
        size: usize,
        clique: &mut Vec<usize>,
        candidates: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if clique.len() == size {
            out.push(clique.clone());
            return;
        }
        for (k, &v) in candidates.iter().enumerate() {
            if clique.len() + (candidates.len() - k) < size {
                break;
            }
            let next: Vec<usize> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&w| adj[v][w])
                .collect();
            clique.push(v);
            extend(adj, size, clique, &next, out);
            clique.pop();
        }
    }
    let mut out = Vec::new();
    if size == 0 {
        return out;
    }
    let all: Vec<usize> = (0..adjacency.len()).collect();
    extend(adjacency, size, &mut Vec::new(), &all, &mut out);
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Search nodes visited, including dead ends and solutions.
    pub nodes: u64,
    /// Nodes at which some unsatisfied context had no undecided ray left.
    pub dead_ends: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringStatus {
    /// One value per ray, in ray order.
    Colorable(Vec<bool>),
    Noncolorable {
        nodes_explored: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringResult {
    pub status: ColoringStatus,
    pub stats: SearchStats,
}

impl ColoringResult {
    pub fn is_colorable(&self) -> bool {
        matches!(self.status, ColoringStatus::Colorable(_))
    }

    pub fn assignment(&self) -> Option<&[bool]> {
        match &self.status {
            ColoringStatus::Colorable(a) => Some(a),
            ColoringStatus::Noncolorable { .. } => None,
        }
    }
}

enum Pick {
    Solved,
    DeadEnd,
    Branch(Vec<usize>),
}

struct Search<'a> {
    inst: &'a KsInstance,
    value: Vec<Option<bool>>,
    stats: SearchStats,
    count_all: bool,
    solutions: u64,
    first: Option<Vec<bool>>,
}

impl Search<'_> {
    fn pick(&self) -> Pick {
        let mut best: Option<Vec<usize>> = None;
        for c in &self.inst.contexts {
            if c.iter().any(|&r| self.value[r] == Some(true)) {
                continue;
            }
            let open: Vec<usize> = c
                .iter()
                .copied()
                .filter(|&r| self.value[r].is_none())
                .collect();
            if open.is_empty() {
                return Pick::DeadEnd;
            }
            if best.as_ref().is_none_or(|b| open.len() < b.len()) {
                best = Some(open);
            }
        }
        best.map_or(Pick::Solved, Pick::Branch)
    }

    /// Returns true once the search may stop.
    fn run(&mut self) -> bool {
        self.stats.nodes += 1;
        match self.pick() {
            Pick::Solved => {
                self.solutions += 1;
                if self.first.is_none() {
                    self.first = Some(self.value.iter().map(|v| v.unwrap_or(false)).collect());
                }
                !self.count_all
            }
            Pick::DeadEnd => {
                self.stats.dead_ends += 1;
                false
            }
            Pick::Branch(candidates) => {
                for r in candidates {
                    let mut trail = vec![r];
                    self.value[r] = Some(true);
                    for &n in &self.inst.neighbours[r] {
                        if self.value[n].is_none() {
                            self.value[n] = Some(false);
                            trail.push(n);
                        }
                    }
                    let stop = self.run();
                    for t in trail {
                        self.value[t] = None;
                    }
                    if stop {
                        return true;
                    }
                }
                false
            }
        }
    }
}

fn search(inst: &KsInstance, count_all: bool) -> Search<'_> {
    let mut s = Search {
        inst,
        value: vec![None; inst.rays.len()],
        stats: SearchStats::default(),
        count_all,
        solutions: 0,
        first: None,
    };
    s.run();
    s
}

/// Finds a coloring or proves that none exists by exhausting the search.
pub fn ks_colorable(inst: &KsInstance) -> ColoringResult {
    let s = search(inst, false);
    let status = match s.first {
        Some(a) => ColoringStatus::Colorable(a),
        None => ColoringStatus::Noncolorable {
            nodes_explored: s.stats.nodes,
        },
    };
    ColoringResult {
        status,
        stats: s.stats,
    }
}

/// Number of distinct colorings.
pub fn count_colorings(inst: &KsInstance) -> (u64, SearchStats) {
    let s = search(inst, true);
    (s.solutions, s.stats)
}

/// Exactly one 1 per context and no orthogonal pair valued 1 twice.
pub fn verify_coloring(inst: &KsInstance, assignment: &[bool]) -> bool {
    if assignment.len() != inst.rays.len() {
        return false;
    }
    let sums_ok = inst
        .contexts
        .iter()
        .all(|c| c.iter().filter(|&&r| assignment[r]).count() == 1);
    let products_ok = (0..inst.rays.len())
        .all(|a| !assignment[a] || inst.neighbours[a].iter().all(|&b| !assignment[b]));
    sums_ok && products_ok
}

/// Ray sets shipped with the crate.
pub mod bundled {
    use super::*;

    /// Eighteen rays in ℂ⁴, nine bases, each ray in two bases.
    pub const CABELLO_18: &str = include_str!("../data/cabello18.rays");
    /// Thirty-three rays in ℂ³; contexts are enumerated.
    pub const PERES_33: &str = include_str!("../data/peres33.rays");
    /// The X and Z spin rays of a qubit.
    pub const QUBIT: &str = include_str!("../data/qubit.rays");

    pub fn cabello_18() -> KsInstance {
        parse_rayfile(CABELLO_18).expect("bundled instance parses")
    }

    pub fn peres_33() -> KsInstance {
        parse_rayfile(PERES_33).expect("bundled instance parses")
    }

    pub fn qubit() -> KsInstance {
        parse_rayfile(QUBIT).expect("bundled instance parses")
    }
}
