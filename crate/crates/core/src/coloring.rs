//! Exact and greedy vertex coloring, sampled growth-rate checks, and
//! exhaustive estimation of `f_G(k)`, the least order of a `k`-chromatic
//! subgraph.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("search budget of {budget} nodes exceeded; {lower} <= chi <= {upper}")]
    BudgetExceeded {
        budget: u64,
        lower: usize,
        upper: usize,
        /// A proper coloring with `upper` colors.
        best: Vec<usize>,
    },
}

/// A certified chromatic number: `coloring` is proper and uses exactly
/// `chi` colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticSolution {
    pub chi: usize,
    pub coloring: Vec<usize>,
    pub nodes: u64,
}

pub fn is_proper(g: &Graph, coloring: &[usize]) -> bool {
    coloring.len() == g.vertex_count() && g.edges().all(|(u, v)| coloring[u] != coloring[v])
}

pub fn colors_used(coloring: &[usize]) -> usize {
    coloring.iter().map(|&c| c + 1).max().unwrap_or(0)
}

/// Greedy coloring along `order`, each vertex taking its lowest free color.
/// Vertices missing from `order` are colored afterwards by index.
pub fn greedy_upper(g: &Graph, order: &[usize]) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let mut color = vec![usize::MAX; n];
    let rest = (0..n).filter(|v| !order.contains(v));
    let full: Vec<usize> = order.iter().copied().chain(rest).collect();
    let mut taken = Vec::new();
    for v in full {
        if color[v] != usize::MAX {
            continue;
        }
        taken.clear();
        taken.extend(g.neighbors(v).iter().map(|&w| color[w]).filter(|&c| c != usize::MAX));
        taken.sort_unstable();
        taken.dedup();
        let c = taken.iter().enumerate().find(|(i, &c)| *i != c).map_or(taken.len(), |(i, _)| i);
        color[v] = c;
    }
    (colors_used(&color), color)
}

/// A greedy clique: from every vertex, add vertices in decreasing degree
/// order whenever they are adjacent to everything chosen so far.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut by_degree: Vec<usize> = (0..g.vertex_count()).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best = Vec::new();
    for &start in &by_degree {
        if g.degree(start) < best.len() {
            continue;
        }
        let mut clique = vec![start];
        for &v in &by_degree {
            if v != start && clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Two-colors the graph if it is bipartite.
pub fn two_coloring(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut color = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if color[s] != usize::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == usize::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

struct Search<'a> {
    g: &'a Graph,
    color: Vec<usize>,
    // forbidden[v][c] = number of neighbors of v colored c
    forbidden: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    uncolored_degree: Vec<usize>,
    best: usize,
    best_coloring: Vec<usize>,
    lower: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

const NONE: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(g: &'a Graph, lower: usize, best: usize, best_coloring: Vec<usize>, budget: u64) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            color: vec![NONE; n],
            forbidden: vec![vec![0; best]; n],
            saturation: vec![0; n],
            uncolored_degree: (0..n).map(|v| g.degree(v)).collect(),
            best,
            best_coloring,
            lower,
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    fn pick(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.color.len() {
            if self.color[v] != NONE {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => (self.saturation[v], self.uncolored_degree[v]) > (self.saturation[b], self.uncolored_degree[b]),
            };
            if better {
                best = Some(v);
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in self.g.neighbors(v) {
            self.uncolored_degree[w] -= 1;
            let slot = &mut self.forbidden[w][c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = NONE;
        for &w in self.g.neighbors(v) {
            self.uncolored_degree[w] += 1;
            let slot = &mut self.forbidden[w][c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(&mut self, used: usize) {
        if self.best == self.lower || self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let Some(v) = self.pick() else {
            // every vertex colored with fewer than `best` colors
            self.best = used;
            self.best_coloring = self.color.clone();
            return;
        };
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.forbidden[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            self.run(used.max(c + 1));
            self.unassign(v, c);
            if self.best == self.lower || self.exhausted {
                return;
            }
        }
    }
}

/// The DSATUR order used both for the initial upper bound and for branching:
/// highest saturation, then most uncolored neighbors, then lowest index.
/// Returns the coloring and the order in which vertices were colored.
fn dsatur_greedy(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = g.vertex_count();
    let mut s = Search::new(g, 0, n.max(1), Vec::new(), 0);
    let mut order = Vec::with_capacity(n);
    while let Some(v) = s.pick() {
        let c = (0..).find(|&c| s.forbidden[v][c] == 0).expect("n colors always suffice");
        s.assign(v, c);
        order.push(v);
    }
    (s.color, order)
}

/// Below this many vertices the core phase is skipped.
const CORE_MIN_VERTICES: usize = 64;

/// Looks for an induced subgraph with no coloring in fewer than `k` colors,
/// among prefixes of the index order and of `dsatur_order`. Returns whether
/// one was found and the search nodes spent.
fn core_proves(g: &Graph, k: usize, dsatur_order: &[usize], budget: u64) -> (bool, u64) {
    let n = g.vertex_count();
    let index_order: Vec<usize> = (0..n).collect();
    let mut nodes = 0;
    // prefix sizes grow by a quarter, so the first uncolorable prefix is
    // tried close to its least size
    let mut sizes = Vec::new();
    let mut m = (k + 1).max(16);
    while m < n {
        sizes.push(m);
        m += m.div_ceil(4);
    }
    let share = budget / (4 * sizes.len() as u64).max(1);
    for order in [&index_order[..], dsatur_order] {
        for &m in &sizes {
            let mut prefix = order[..m].to_vec();
            prefix.sort_unstable();
            let sub = g.induced(&prefix);
            // stop at the first coloring with k - 1 colors
            let mut s = Search::new(&sub, k - 1, k, Vec::new(), share);
            s.run(0);
            nodes += s.nodes;
            if !s.exhausted && s.best == k {
                return (true, nodes);
            }
        }
    }
    (false, nodes)
}

/// Exact chromatic number by branch and bound over DSATUR orderings, with a
/// greedy clique (or an odd cycle) as lower bound. On larger graphs the
/// lower bound is then raised by finding induced prefixes that admit no
/// coloring with fewer colors, which often settles `χ` before the full
/// search. At most
/// `budget` search nodes are expanded in total; past that the best known
/// bounds are reported.
pub fn exact_chromatic(g: &Graph, budget: u64) -> Result<ChromaticSolution, ColoringError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ChromaticSolution {
            chi: 0,
            coloring: Vec::new(),
            nodes: 0,
        });
    }
    if g.edge_count() == 0 {
        return Ok(ChromaticSolution {
            chi: 1,
            coloring: vec![0; n],
            nodes: 0,
        });
    }
    if let Some(coloring) = two_coloring(g) {
        return Ok(ChromaticSolution {
            chi: 2,
            coloring,
            nodes: 0,
        });
    }
    let lower = greedy_clique(g).len().max(3);
    let (initial, order) = dsatur_greedy(g);
    let upper = colors_used(&initial);
    if upper == lower {
        return Ok(ChromaticSolution {
            chi: upper,
            coloring: initial,
            nodes: 0,
        });
    }
    let mut lower = lower;
    let mut spent = 0;
    if n >= CORE_MIN_VERTICES {
        while lower < upper {
            let (proved, nodes) = core_proves(g, lower + 1, &order, budget / 2);
            spent += nodes;
            if !proved {
                break;
            }
            lower += 1;
        }
        if lower == upper {
            return Ok(ChromaticSolution {
                chi: upper,
                coloring: initial,
                nodes: spent,
            });
        }
    }
    let mut s = Search::new(g, lower, upper, initial, budget.saturating_sub(spent));
    s.run(0);
    if s.exhausted {
        return Err(ColoringError::BudgetExceeded {
            budget,
            lower,
            upper: s.best,
            best: s.best_coloring,
        });
    }
    Ok(ChromaticSolution {
        chi: s.best,
        coloring: s.best_coloring,
        nodes: spent + s.nodes,
    })
}

/// `count` vertex sets of size at most `size`, each grown from a random
/// vertex by repeatedly adding a random neighbor of the current set; when a
/// component is exhausted growth restarts from a fresh random vertex.
pub fn sample_connected_subsets(g: &Graph, size: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let size = size.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut inside = vec![false; n];
        let mut set = Vec::with_capacity(size);
        let mut frontier: Vec<usize> = Vec::new();
        while set.len() < size {
            let next = if frontier.is_empty() {
                let outside: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
                *outside.choose(&mut rng).expect("size <= n")
            } else {
                frontier.swap_remove(rng.gen_range(0..frontier.len()))
            };
            if inside[next] {
                continue;
            }
            inside[next] = true;
            set.push(next);
            frontier.extend(g.neighbors(next).iter().copied().filter(|&w| !inside[w]));
            frontier.retain(|&w| !inside[w]);
            frontier.sort_unstable();
            frontier.dedup();
        }
        set.sort_unstable();
        out.push(set);
    }
    out
}

/// Outcome of checking `χ(H) ≤ 2^{k+1}` on sampled subgraphs `H` of at most
/// `f(k)` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub k: usize,
    pub f_k: usize,
    pub bound: usize,
    pub max_chi: usize,
    pub samples: usize,
    /// Samples whose solver run exceeded the budget.
    pub skipped: usize,
    /// Vertex sets whose chromatic number exceeds the bound.
    pub violations: Vec<Vec<usize>>,
}

impl GrowthReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub const CSV_HEADER: &'static str = "k,f_k,bound,max_observed_chi,samples";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.k, self.f_k, self.bound, self.max_chi, self.samples)
    }
}

pub fn verify_growth_bound(g: &Graph, f_k: usize, k: usize, samples: usize, seed: u64, budget: u64) -> GrowthReport {
    let bound = 1usize << (k + 1);
    let mut report = GrowthReport {
        k,
        f_k,
        bound,
        max_chi: 0,
        samples,
        skipped: 0,
        violations: Vec::new(),
    };
    for set in sample_connected_subsets(g, f_k, samples, seed) {
        match exact_chromatic(&g.induced(&set), budget) {
            Ok(sol) => {
                report.max_chi = report.max_chi.max(sol.chi);
                if sol.chi > bound {
                    report.violations.push(set);
                }
            }
            Err(ColoringError::BudgetExceeded { lower, .. }) => {
                report.skipped += 1;
                if lower > bound {
                    report.violations.push(set);
                }
            }
        }
    }
    report
}

/// Calls `visit` once for every connected vertex set of exactly `size`
/// vertices (ESU enumeration). Stops early once `visit` returns true.
pub fn for_each_connected_set(g: &Graph, size: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn extend(g: &Graph, root: usize, sub: &mut Vec<usize>, mut ext: Vec<usize>, size: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if sub.len() == size {
            return visit(sub);
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in g.neighbors(w) {
                if u > root
                    && !sub.contains(&u)
                    && u != w
                    && !next.contains(&u)
                    && !sub.iter().any(|&x| g.has_edge(x, u))
                {
                    next.push(u);
                }
            }
            sub.push(w);
            let stop = extend(g, root, sub, next, size, visit);
            sub.pop();
            if stop {
                return true;
            }
        }
        false
    }
    if size == 0 {
        return false;
    }
    for v in 0..g.vertex_count() {
        let ext: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        let mut sub = vec![v];
        if extend(g, v, &mut sub, ext, size, visit) {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FgEstimate {
    /// `f_G(k)` together with a `k`-chromatic vertex set of that size.
    Exact { value: usize, witness: Vec<usize> },
    /// No connected subgraph of at most `cap` vertices has `χ ≥ k`.
    Above { cap: usize },
}

/// `f_G(k)` for `k ≥ 2` by exhaustive search over connected induced
/// subgraphs in increasing size. A subgraph of `χ ≥ k` found at the least
/// size has `χ = k` exactly, since deleting a vertex lowers `χ` by at most one.
pub fn estimate_f_g(g: &Graph, k: usize, size_cap: usize, budget: u64) -> Result<FgEstimate, ColoringError> {
    assert!(k >= 2, "f_G is only estimated for k >= 2");
    for size in k..=size_cap.min(g.vertex_count()) {
        let mut found = None;
        let mut failure = None;
        for_each_connected_set(g, size, &mut |set| match exact_chromatic(&g.induced(set), budget) {
            Ok(sol) if sol.chi >= k => {
                found = Some(set.to_vec());
                true
            }
            Ok(_) => false,
            Err(e) => {
                failure = Some(e);
                true
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if let Some(witness) = found {
            return Ok(FgEstimate::Exact { value: size, witness });
        }
    }
    Ok(FgEstimate::Above { cap: size_cap })
}

/// A coloring as a `name -> color` map, for export.
pub fn coloring_map(names: impl IntoIterator<Item = String>, coloring: &[usize]) -> BTreeMap<String, usize> {
    names.into_iter().zip(coloring.iter().copied()).collect()
}
