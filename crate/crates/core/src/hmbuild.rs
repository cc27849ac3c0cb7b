//! The Cohen-stream HM construction on the ordinals of a universe, its
//! density-injection mirror, and the tree construction on `^{<λ}ω`.
//!
//! Both constructions attach to each limit `β` a finite set of lower
//! neighbors chosen step by step, `k = 0, 1, …, K_max − 1`. A candidate `α`
//! chosen at step `k` is accepted iff
//!
//! 1. `α` is a limit below `β` (chosen as `e_β(r(k))` in the Cohen build, or
//!    as the least limit with `f(α) = k` in the tree build);
//! 2. `C_α(n) > max(accepted ∪ {C_β(n)})`;
//! 3. `α > max(accepted ∪ {C_β(k)})`;
//! 4. `{C_β[n], C_α[n]}` is an edge of `S^n_s`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::csequence::{LadderError, LadderSystem};
use crate::graph::{Levelled, OrdGraph};
use crate::ordinal::{enum_below, enum_inverse, Ordinal, OrdinalError, Universe};
use crate::specker::{is_edge, SpeckerError};
use crate::types::{specker_type, DisjointType, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("at {beta}, step {k}: {source}")]
    Ladder {
        beta: Ordinal,
        k: usize,
        #[source]
        source: LadderError,
    },
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Specker(#[from] SpeckerError),
}

fn at(beta: &Ordinal, k: usize) -> impl FnOnce(LadderError) -> BuildError + '_ {
    move |source| BuildError::Ladder {
        beta: beta.clone(),
        k,
        source,
    }
}

/// A deterministic stand-in for the Cohen real `r : ω → ω`: an explicit
/// prefix followed by independent seeded draws, `read(i)` uniform in
/// `[0, base + slope·i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stream {
    pub prefix: Vec<u64>,
    pub seed: u64,
    pub base: u64,
    pub slope: u64,
}

impl Stream {
    pub const DEFAULT_BASE: u64 = 32;
    pub const DEFAULT_SLOPE: u64 = 4;

    pub fn new(seed: u64) -> Self {
        Self {
            prefix: Vec::new(),
            seed,
            base: Self::DEFAULT_BASE,
            slope: Self::DEFAULT_SLOPE,
        }
    }

    pub fn with_prefix(mut self, prefix: Vec<u64>) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn with_schedule(mut self, base: u64, slope: u64) -> Self {
        assert!(base > 0, "the value bound must be positive");
        self.base = base;
        self.slope = slope;
        self
    }

    pub fn bound(&self, i: usize) -> u64 {
        self.base + self.slope * i as u64
    }

    pub fn read(&self, i: usize) -> u64 {
        if let Some(&v) = self.prefix.get(i) {
            return v;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(i as u64);
        rng.gen_range(0..self.bound(i))
    }

    /// The first `len` values, as an explicit prefix.
    pub fn take(&self, len: usize) -> Vec<u64> {
        (0..len).map(|i| self.read(i)).collect()
    }

    /// The same stream with its prefix fixed to `len` values.
    pub fn pinned(&self, len: usize) -> Self {
        Self {
            prefix: self.take(len),
            ..self.clone()
        }
    }

    /// The prefix extended by one value at position `prefix.len()`.
    pub fn extended(&self, value: u64) -> Self {
        let mut prefix = self.prefix.clone();
        prefix.push(value);
        Self {
            prefix,
            ..self.clone()
        }
    }
}

/// `(n, s, K_max)`: the graph maps into `S^n_s` and each limit examines
/// `K_max` candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildParams {
    pub n: usize,
    pub s: usize,
    pub k_max: usize,
}

impl BuildParams {
    pub fn new(n: usize, s: usize, k_max: usize) -> Self {
        Self { n, s, k_max }
    }

    pub fn validate(&self, width: usize) -> Result<(), BuildError> {
        let Self { n, s, k_max } = *self;
        if s < 1 {
            return Err(BuildError::Params("s must be at least 1".into()));
        }
        if n < 2 * s * s + 1 {
            return Err(BuildError::Params(format!("n = {n} is below 2s^2+1 = {}", 2 * s * s + 1)));
        }
        if n >= width {
            return Err(BuildError::Params(format!("n = {n} needs C(n), past the prefix width {width}")));
        }
        if k_max > width {
            return Err(BuildError::Params(format!("K_max = {k_max} exceeds the prefix width {width}")));
        }
        Ok(())
    }

    pub fn specker(&self) -> DisjointType {
        specker_type(self.n, self.s).expect("validated parameters")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Accepted,
    NotProcessedLimit,
    Cond2,
    Cond3,
    Cond4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub k: usize,
    pub raw: u64,
    pub candidate: Ordinal,
    pub decision: Decision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitTrace {
    pub beta: Ordinal,
    pub steps: Vec<Step>,
    /// `K_β`.
    pub accepted: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildTrace {
    pub universe: Universe,
    pub params: BuildParams,
    pub stream: Stream,
    pub limits: Vec<LimitTrace>,
}

impl BuildTrace {
    pub fn for_limit(&self, beta: &Ordinal) -> Option<&LimitTrace> {
        self.limits.iter().find(|l| &l.beta == beta)
    }
}

#[derive(Debug, Clone)]
pub struct CohenBuild {
    pub graph: OrdGraph<Ordinal>,
    pub trace: BuildTrace,
}

impl CohenBuild {
    /// `N^<(β)`; empty for successors and for ordinals outside the graph.
    pub fn lower_neighbors(&self, beta: &Ordinal) -> Vec<Ordinal> {
        self.graph.lower_neighbor_labels(beta)
    }
}

/// Judges a candidate against conditions (2)–(4) given the neighbors
/// accepted so far.
fn judge(
    ladders: &LadderSystem,
    t: &DisjointType,
    n: usize,
    beta: &Ordinal,
    k: usize,
    alpha: &Ordinal,
    accepted: &[Ordinal],
) -> Result<Decision, BuildError> {
    if !alpha.is_limit() || alpha >= beta {
        return Ok(Decision::NotProcessedLimit);
    }
    let top = accepted.last();
    let c_beta_n = ladders.c_at(beta, n).map_err(at(beta, k))?;
    let c_alpha_n = ladders.c_at(alpha, n).map_err(at(beta, k))?;
    if c_alpha_n <= c_beta_n || top.is_some_and(|m| c_alpha_n <= m) {
        return Ok(Decision::Cond2);
    }
    let c_beta_k = ladders.c_at(beta, k).map_err(at(beta, k))?;
    if alpha <= c_beta_k || top.is_some_and(|m| alpha <= m) {
        return Ok(Decision::Cond3);
    }
    let a = ladders.c_prefix(alpha, n).map_err(at(beta, k))?;
    let b = ladders.c_prefix(beta, n).map_err(at(beta, k))?;
    if !is_edge(t, b, a)? {
        return Ok(Decision::Cond4);
    }
    Ok(Decision::Accepted)
}

/// Builds the graph limit by limit. Successor ordinals never receive lower
/// neighbors, so only the limits of the universe are materialized.
pub fn build_cohen_hm(ladders: &LadderSystem, stream: &Stream, params: BuildParams) -> Result<CohenBuild, BuildError> {
    let u = ladders.universe();
    params.validate(u.prefix_width())?;
    let t = params.specker();
    let mut graph = OrdGraph::new(u.limits().collect());
    let mut limits = Vec::with_capacity(u.limit_count());
    for beta in u.limits() {
        // accepted candidates increase, so the last one is the maximum
        let mut accepted: Vec<Ordinal> = Vec::new();
        let mut steps = Vec::with_capacity(params.k_max);
        let mut keys = Vec::new();
        for k in 0..params.k_max {
            let raw = stream.read(k);
            let candidate = enum_below(&beta, raw)?;
            let decision = judge(ladders, &t, params.n, &beta, k, &candidate, &accepted)?;
            if decision == Decision::Accepted {
                graph.add_edge(&candidate, &beta);
                accepted.push(candidate.clone());
                keys.push(k);
            }
            steps.push(Step {
                k,
                raw,
                candidate,
                decision,
            });
        }
        limits.push(LimitTrace {
            beta,
            steps,
            accepted: keys,
        });
    }
    Ok(CohenBuild {
        graph,
        trace: BuildTrace {
            universe: u.clone(),
            params,
            stream: stream.clone(),
            limits,
        },
    })
}

/// Rebuilds the graph from the accepted decisions of a trace alone.
pub fn replay(trace: &BuildTrace) -> OrdGraph<Ordinal> {
    let mut graph = OrdGraph::new(trace.universe.limits().collect());
    for lt in &trace.limits {
        for step in lt.steps.iter().filter(|s| s.decision == Decision::Accepted) {
            graph.add_edge(&step.candidate, &lt.beta);
        }
    }
    graph
}

/// The outcome of [`force_monochromatic_edge`]: the extended stream and the
/// edge it plants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Injection {
    pub stream: Stream,
    pub beta: Ordinal,
    pub alpha: Ordinal,
    pub color: u64,
    /// The stream position that now names `α`.
    pub position: usize,
    /// The largest candidate decided by the old prefix, if any.
    pub lambda: Option<Ordinal>,
}

/// Searches for limits `α* < β` with `f(α*) = f(β)`,
/// `C_{α*}(n) > max{λ, C_β(n), C_β(m)}` and `{C_β[n], C_{α*}[n]}` an edge of
/// `S^n_s`, where `m` is the prefix length and `λ` the largest candidate the
/// prefix decides at `β`. Appending `e_β^{-1}(α*)` to the prefix makes step
/// `m` of stage `β` accept `α*`. `β` and then `α*` are taken least possible.
pub fn force_monochromatic_edge(
    ladders: &LadderSystem,
    prefix: &Stream,
    f: &dyn Fn(&Ordinal) -> u64,
    params: BuildParams,
) -> Result<Option<Injection>, BuildError> {
    let u = ladders.universe();
    params.validate(u.prefix_width())?;
    let m = prefix.prefix.len();
    if m >= params.k_max {
        return Err(BuildError::Params(format!(
            "prefix length {m} leaves no step below K_max = {}",
            params.k_max
        )));
    }
    let t = params.specker();
    let n = params.n;
    for beta in u.limits() {
        let color = f(&beta);
        let lambda = prefix
            .prefix
            .iter()
            .map(|&q| enum_below(&beta, q))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .max();
        let c_beta_n = ladders.c_at(&beta, n).map_err(at(&beta, m))?;
        let c_beta_m = ladders.c_at(&beta, m).map_err(at(&beta, m))?;
        let mut floor = c_beta_n.max(c_beta_m);
        if let Some(l) = &lambda {
            floor = floor.max(l);
        }
        let b = ladders.c_prefix(&beta, n).map_err(at(&beta, m))?;
        for alpha in u.limits_below(&beta) {
            if f(&alpha) != color {
                continue;
            }
            if ladders.c_at(&alpha, n).map_err(at(&beta, m))? <= floor {
                continue;
            }
            let a = ladders.c_prefix(&alpha, n).map_err(at(&beta, m))?;
            if !is_edge(&t, b, a)? {
                continue;
            }
            let index = enum_inverse(&beta, &alpha)?;
            return Ok(Some(Injection {
                stream: prefix.extended(index),
                beta: beta.clone(),
                alpha,
                color,
                position: m,
                lambda,
            }));
        }
    }
    Ok(None)
}

/// A node of the tree `^{<λ}ω` at a limit level `ω·b`: a function on the
/// ordinals below `ω·b`, recorded by its values at the limits
/// `ω, ω·2, …, ω·(b−1)` (values elsewhere are fixed at 0). Nodes are
/// ordered by level first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeNode {
    level: Ordinal,
    values: Vec<u64>,
}

impl TreeNode {
    /// The node of level `ω·(values.len() + 1)`.
    pub fn new(values: Vec<u64>) -> Self {
        Self {
            level: Ordinal::omega_mul(values.len() as u64 + 1),
            values,
        }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `f(α)` for a limit `α` below the level.
    pub fn value_at(&self, alpha: &Ordinal) -> Option<u64> {
        match alpha.as_omega_linear()? {
            (a, 0) if a >= 1 => self.values.get(a as usize - 1).copied(),
            _ => None,
        }
    }

    /// `f↾α` for a limit `α ≤ level`.
    pub fn restrict(&self, alpha: &Ordinal) -> Option<TreeNode> {
        match alpha.as_omega_linear()? {
            (a, 0) if a >= 1 && a as usize <= self.values.len() + 1 => Some(TreeNode::new(self.values[..a as usize - 1].to_vec())),
            _ => None,
        }
    }

    /// Whether `self` is an initial segment of `other`.
    pub fn is_restriction_of(&self, other: &TreeNode) -> bool {
        other.values.starts_with(&self.values)
    }
}

impl Levelled for TreeNode {
    fn level(&self) -> &Ordinal {
        &self.level
    }
}

impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.level)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for TreeNode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone)]
pub struct TreeBuild {
    pub graph: OrdGraph<TreeNode>,
    /// Per node, the pairs `(k, β^f_k)` for `k ∈ K_f`.
    pub choices: BTreeMap<TreeNode, Vec<(usize, Ordinal)>>,
}

/// Builds the tree graph on every limit-level node of the given branches.
/// A branch lists its values at all limits of the universe; the tree is
/// the set of restrictions of the branches to limit levels.
pub fn build_tree_hm(ladders: &LadderSystem, branches: &[Vec<u64>], params: BuildParams) -> Result<TreeBuild, BuildError> {
    let u = ladders.universe();
    params.validate(u.prefix_width())?;
    let t = params.specker();
    let limits = u.limit_count();
    let mut nodes = Vec::new();
    for (i, branch) in branches.iter().enumerate() {
        if branch.len() != limits {
            return Err(BuildError::Params(format!(
                "branch #{i} has {} values, the universe has {limits} limits",
                branch.len()
            )));
        }
        nodes.extend((0..limits).map(|b| TreeNode::new(branch[..b].to_vec())));
    }
    let mut graph = OrdGraph::new(nodes);
    let mut choices = BTreeMap::new();
    for node in graph.labels().to_vec() {
        let beta = node.level.clone();
        let mut accepted: Vec<Ordinal> = Vec::new();
        let mut chosen = Vec::new();
        for k in 0..params.k_max {
            let mut found = None;
            for alpha in u.limits_below(&beta) {
                if node.value_at(&alpha) != Some(k as u64) {
                    continue;
                }
                if judge(ladders, &t, params.n, &beta, k, &alpha, &accepted)? == Decision::Accepted {
                    found = Some(alpha);
                    break;
                }
            }
            if let Some(alpha) = found {
                let lower = node.restrict(&alpha).expect("alpha is below the level");
                graph.add_edge(&lower, &node);
                accepted.push(alpha.clone());
                chosen.push((k, alpha));
            }
        }
        choices.insert(node, chosen);
    }
    Ok(TreeBuild { graph, choices })
}

/// The branch `g` with `g(α) = c(g↾α)` at every limit `α` of the universe.
pub fn diagonal_branch(u: &Universe, c: &dyn Fn(&TreeNode) -> u64) -> Vec<u64> {
    let mut values = Vec::with_capacity(u.limit_count());
    for _ in 0..u.limit_count() {
        let v = c(&TreeNode::new(values.clone()));
        values.push(v);
    }
    values
}

/// An edge `{g↾α, g↾β}` along `branch` whose endpoints get the same color
/// under `c`, returned as `(lower, upper)`.
pub fn diagonal_conflict(build: &TreeBuild, branch: &[u64], c: &dyn Fn(&TreeNode) -> u64) -> Option<(TreeNode, TreeNode)> {
    (0..branch.len()).find_map(|b| {
        let upper = TreeNode::new(branch[..b].to_vec());
        let color = c(&upper);
        build
            .graph
            .lower_neighbor_labels(&upper)
            .into_iter()
            .find(|lower| c(lower) == color)
            .map(|lower| (lower, upper))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphprops::{check_hm_sparseness, check_homomorphism, find_special_cycle, is_delta_covered, shortest_odd_cycle_upto};

    fn setup(seed: u64) -> (LadderSystem, Stream, BuildParams) {
        let u = Universe::new(32, 16).unwrap();
        (LadderSystem::seeded(&u, seed), Stream::new(seed), BuildParams::new(3, 1, 12))
    }

    #[test]
    fn stream_is_stable() {
        let s = Stream::new(5);
        let first: Vec<u64> = (0..20).map(|i| s.read(i)).collect();
        assert_eq!(first, s.take(20));
        assert!(first.iter().enumerate().all(|(i, &v)| v < s.bound(i)));
        let p = s.pinned(3).extended(1000);
        assert_eq!(p.prefix.len(), 4);
        assert_eq!(p.read(3), 1000);
        assert_eq!(p.read(7), s.read(7));
    }

    #[test]
    fn params_are_validated() {
        assert!(BuildParams::new(3, 1, 12).validate(16).is_ok());
        assert!(BuildParams::new(2, 1, 12).validate(16).is_err());
        assert!(BuildParams::new(16, 1, 12).validate(16).is_err());
        assert!(BuildParams::new(3, 1, 17).validate(16).is_err());
        assert!(BuildParams::new(3, 0, 12).validate(16).is_err());
    }

    #[test]
    fn cohen_build_passes_verifiers() {
        for seed in 0..3 {
            let (ladders, stream, params) = setup(seed);
            let build = build_cohen_hm(&ladders, &stream, params).unwrap();
            let g = &build.graph;
            assert!(check_hm_sparseness(g, &ladders, params.k_max).is_empty());
            assert!(find_special_cycle(g.graph()).is_none());
            assert!(shortest_odd_cycle_upto(g.graph(), 3).is_none());
            let image = |v: &Ordinal| ladders.c_prefix(v, 3).ok().map(<[Ordinal]>::to_vec);
            assert!(check_homomorphism(g, image, &params.specker()).unwrap());
            for beta in g.labels() {
                let c = ladders.c_at(beta, 3).unwrap();
                assert!(!is_delta_covered(g, beta, c).unwrap());
            }
            assert_eq!(replay(&build.trace), build.graph);
        }
    }

    #[test]
    fn accepted_steps_match_lower_neighbors() {
        let (ladders, stream, params) = setup(0);
        let build = build_cohen_hm(&ladders, &stream, params).unwrap();
        for lt in &build.trace.limits {
            let from_trace: Vec<Ordinal> = lt.accepted.iter().map(|&k| lt.steps[k].candidate.clone()).collect();
            assert_eq!(from_trace, build.lower_neighbors(&lt.beta));
            assert_eq!(lt.steps.len(), params.k_max);
        }
        assert!(build.lower_neighbors(&Ordinal::omega_mul_plus(5, 1)).is_empty());
    }

    #[test]
    fn condition_consequences_hold() {
        let (ladders, stream, params) = setup(1);
        let build = build_cohen_hm(&ladders, &stream, params).unwrap();
        let g = &build.graph;
        for beta in g.labels() {
            let lower = g.lower_neighbor_labels(beta);
            for (i, a) in lower.iter().enumerate() {
                for b in &lower[i + 1..] {
                    assert!(!is_delta_covered(g, b, a).unwrap());
                }
            }
            for gamma in ladders.universe().limits_below(beta) {
                let below = lower.iter().filter(|a| **a < gamma).count();
                let steps = (0..params.k_max).filter(|&k| ladders.c_at(beta, k).unwrap() <= &gamma).count();
                assert!(below <= steps);
            }
        }
    }

    #[test]
    fn injection_creates_monochromatic_edge() {
        let (ladders, stream, params) = setup(0);
        let prefix = stream.pinned(2);
        let f = |_: &Ordinal| 0;
        let inj = force_monochromatic_edge(&ladders, &prefix, &f, params).unwrap().expect("witness");
        assert_eq!(inj.stream.prefix.len(), 3);
        assert_eq!(inj.stream.prefix[..2], prefix.prefix[..]);
        let rebuilt = build_cohen_hm(&ladders, &inj.stream, params).unwrap();
        assert!(rebuilt.graph.has_edge(&inj.alpha, &inj.beta));
        let lt = rebuilt.trace.for_limit(&inj.beta).unwrap();
        assert_eq!(lt.steps[2].decision, Decision::Accepted);
        assert_eq!(f(&inj.alpha), f(&inj.beta));
    }

    #[test]
    fn high_candidates_leave_no_room() {
        // the length-4 prefix decides a candidate in the top block of every
        // limit, and no ladder entry below a limit can exceed it
        let (ladders, stream, params) = setup(0);
        let f = |_: &Ordinal| 0;
        assert_eq!(force_monochromatic_edge(&ladders, &stream.pinned(4), &f, params), Ok(None));
    }

    #[test]
    fn injective_coloring_has_no_witness() {
        let (ladders, stream, params) = setup(0);
        let f = |a: &Ordinal| a.as_omega_linear().unwrap().0;
        assert_eq!(force_monochromatic_edge(&ladders, &stream.pinned(2), &f, params), Ok(None));
    }

    #[test]
    fn canonical_ladders_never_realize_specker_edges() {
        let u = Universe::new(32, 16).unwrap();
        let ladders = LadderSystem::canonical(&u);
        let params = BuildParams::new(3, 1, 12);
        let f = |_: &Ordinal| 0;
        assert_eq!(force_monochromatic_edge(&ladders, &Stream::new(0).pinned(4), &f, params), Ok(None));
        assert_eq!(build_cohen_hm(&ladders, &Stream::new(0), params).unwrap().graph.edge_count(), 0);
    }

    #[test]
    fn tree_nodes() {
        let f = TreeNode::new(vec![3, 1, 4]);
        assert_eq!(f.level(), &Ordinal::omega_mul(4));
        assert_eq!(f.value_at(&Ordinal::omega_mul(2)), Some(1));
        assert_eq!(f.value_at(&Ordinal::omega_mul(4)), None);
        assert_eq!(f.restrict(&Ordinal::omega_mul(2)), Some(TreeNode::new(vec![3])));
        assert_eq!(f.to_string(), "w*4[3,1,4]");
        assert!(TreeNode::new(vec![3]).is_restriction_of(&f));
        assert!(TreeNode::new(vec![9]) < f);
    }

    fn tree_family(u: &Universe, c: &dyn Fn(&TreeNode) -> u64) -> Vec<Vec<u64>> {
        let mut branches: Vec<Vec<u64>> = (0..9u64)
            .map(|b| (0..u.limit_count() as u64).map(|i| (i * (b + 1) + b) % 4).collect())
            .collect();
        branches.push(diagonal_branch(u, c));
        branches
    }

    #[test]
    fn tree_build_passes_verifiers() {
        let u = Universe::new(24, 12).unwrap();
        let ladders = LadderSystem::seeded(&u, 3);
        let params = BuildParams::new(3, 1, 10);
        let c = |node: &TreeNode| node.values().iter().sum::<u64>() % 3;
        let branches = tree_family(&u, &c);
        let build = build_tree_hm(&ladders, &branches, params).unwrap();
        let g = &build.graph;
        assert!(g.edge_count() > 0);
        assert!(find_special_cycle(g.graph()).is_none());
        assert!(shortest_odd_cycle_upto(g.graph(), 3).is_none());
        assert!(check_hm_sparseness(g, &ladders, params.k_max).is_empty());
        let image = |v: &TreeNode| ladders.c_prefix(v.level(), 3).ok().map(<[Ordinal]>::to_vec);
        assert!(check_homomorphism(g, image, &params.specker()).unwrap());
        for (lower, upper) in g.labeled_edges() {
            assert!(lower.is_restriction_of(upper));
        }
        for (node, chosen) in &build.choices {
            for (k, alpha) in chosen {
                assert_eq!(node.value_at(alpha), Some(*k as u64));
            }
        }
    }

    #[test]
    fn tree_choices_are_minimal() {
        let u = Universe::new(24, 12).unwrap();
        let ladders = LadderSystem::seeded(&u, 3);
        let params = BuildParams::new(3, 1, 10);
        let branch: Vec<u64> = vec![0; u.limit_count()];
        let build = build_tree_hm(&ladders, &[branch], params).unwrap();
        let t = params.specker();
        for (node, chosen) in &build.choices {
            let beta = node.level();
            let mut accepted: Vec<Ordinal> = Vec::new();
            for (k, alpha) in chosen {
                for smaller in u.limits_below(alpha).filter(|a| node.value_at(a) == Some(*k as u64)) {
                    let d = judge(&ladders, &t, 3, beta, *k, &smaller, &accepted).unwrap();
                    assert_ne!(d, Decision::Accepted, "{smaller} beats {alpha} at {node}");
                }
                accepted.push(alpha.clone());
            }
        }
    }

    #[test]
    fn constant_coloring_conflicts_on_the_diagonal() {
        let u = Universe::new(24, 12).unwrap();
        let ladders = LadderSystem::seeded(&u, 3);
        let params = BuildParams::new(3, 1, 10);
        let c = |_: &TreeNode| 0;
        let g = diagonal_branch(&u, &c);
        assert!(g.iter().all(|&v| v == 0));
        let build = build_tree_hm(&ladders, std::slice::from_ref(&g), params).unwrap();
        let (lower, upper) = diagonal_conflict(&build, &g, &c).expect("monochromatic edge");
        assert!(build.graph.has_edge(&lower, &upper));
    }
}
