//! Structural verifiers: short odd cycles, special cycles, δ-coverage,
//! sparseness and homomorphisms into type graphs.
//!
//! Every search that reports a witness re-checks it against the graph
//! before returning it.

use std::collections::VecDeque;
use std::fmt::Display;

use serde::Serialize;
use thiserror::Error;

use crate::csequence::LadderSystem;
use crate::graph::{Graph, Levelled, OrdGraph};
use crate::ordinal::Ordinal;
use crate::specker::is_edge;
use crate::types::DisjointType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{0} is not a vertex of the graph")]
    NotAVertex(String),
    #[error("no image given for vertex {0}")]
    MissingImage(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    pub length: usize,
    /// Distinct vertices in cycle order; the closing edge is implied.
    pub cycle: Vec<usize>,
}

/// Checks that `cycle` lists distinct vertices joined consecutively (and
/// last to first) by edges.
pub fn is_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = cycle.len();
    if n < 3 {
        return false;
    }
    let mut seen = cycle.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == n && (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// A shortest odd cycle of length at most `max_len`, if any.
///
/// Breadth-first search on the bipartite double cover: from `(s, even)`,
/// reaching `(s, odd)` at distance `d` gives a closed odd walk of length `d`
/// through `s`. The globally shortest such walk is a cycle.
pub fn shortest_odd_cycle_upto(g: &Graph, max_len: usize) -> Option<OddCycle> {
    let n = g.vertex_count();
    if max_len < 3 {
        return None;
    }
    let mut dist = vec![usize::MAX; 2 * n];
    let mut parent = vec![usize::MAX; 2 * n];
    let mut touched = Vec::new();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut queue = VecDeque::new();

    for s in 0..n {
        if g.degree(s) < 2 {
            continue;
        }
        let limit = match &best {
            Some((len, _)) => len - 2,
            None => max_len,
        };
        if limit < 3 {
            break;
        }
        for &x in &touched {
            dist[x] = usize::MAX;
            parent[x] = usize::MAX;
        }
        touched.clear();
        queue.clear();

        let start = 2 * s;
        let target = 2 * s + 1;
        dist[start] = 0;
        touched.push(start);
        queue.push_back(start);
        while let Some(state) = queue.pop_front() {
            let d = dist[state];
            if state == target || d >= limit {
                continue;
            }
            let (v, parity) = (state / 2, state % 2);
            for &w in g.neighbors(v) {
                let next = 2 * w + (1 - parity);
                if dist[next] == usize::MAX {
                    dist[next] = d + 1;
                    parent[next] = state;
                    touched.push(next);
                    queue.push_back(next);
                }
            }
        }
        if dist[target] != usize::MAX && dist[target] <= limit {
            let mut walk = Vec::new();
            let mut cur = target;
            while cur != start {
                walk.push(cur / 2);
                cur = parent[cur];
            }
            walk.reverse();
            let len = walk.len();
            best = Some((len, walk));
        }
    }

    best.map(|(length, mut cycle)| {
        // walk ends at s; rotate so it starts there
        cycle.rotate_right(1);
        debug_assert!(is_cycle(g, &cycle), "odd walk of minimum length is a cycle");
        assert!(is_cycle(g, &cycle));
        OddCycle { length, cycle }
    })
}

/// Whether `cycle` (closing edge implied) is special with respect to the
/// vertex index order: it descends from `cycle[0]` to some `cycle[r]` and
/// then ascends back to `cycle[0]`.
pub fn is_special_cycle(g: &Graph, cycle: &[usize]) -> bool {
    if !is_cycle(g, cycle) {
        return false;
    }
    let n = cycle.len();
    let next = |i: usize| cycle[(i + 1) % n];
    let mut r = 0;
    while r < n && cycle[r] > next(r) {
        r += 1;
    }
    r >= 1 && (r..n).all(|i| cycle[i] < next(i))
}

/// A special cycle, if one exists, as vertex indices starting at its top.
///
/// A special cycle is two monotone paths between the same top and bottom,
/// so one exists iff some vertex reaches another along two different
/// descending paths. Each vertex is tried as a top; the breadth-first tree
/// of descending paths from it is grown until an edge closes a second path.
pub fn find_special_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();

    for top in (0..n).rev() {
        for &x in &touched {
            seen[x] = false;
            parent[x] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        seen[top] = true;
        touched.push(top);
        queue.push_back(top);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u).iter().take_while(|&&w| w < u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[w] != u {
                    let cycle = close_two_paths(&parent, top, u, w);
                    assert!(is_special_cycle(g, &cycle), "special cycle witness failed re-check");
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn tree_path(parent: &[usize], top: usize, mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while v != top {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Given two descending paths `top → … → w` (tree path) and
/// `top → … → u → w`, cut them at their last common vertex.
fn close_two_paths(parent: &[usize], top: usize, u: usize, w: usize) -> Vec<usize> {
    let a = tree_path(parent, top, w);
    let mut b = tree_path(parent, top, u);
    b.push(w);
    let common = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    let apex = common - 1;
    let mut cycle: Vec<usize> = a[apex..].to_vec();
    // back up along b, excluding w and the apex
    cycle.extend(b[apex + 1..b.len() - 1].iter().rev());
    cycle
}

/// Label version of [`find_special_cycle`].
pub fn find_special_cycle_labels<V: Ord + Clone>(g: &OrdGraph<V>) -> Option<Vec<V>> {
    find_special_cycle(g.graph()).map(|c| c.into_iter().map(|i| g.label(i).clone()).collect())
}

/// Label version of [`shortest_odd_cycle_upto`].
pub fn shortest_odd_cycle_labels<V: Ord + Clone>(g: &OrdGraph<V>, max_len: usize) -> Option<Vec<V>> {
    shortest_odd_cycle_upto(g.graph(), max_len).map(|c| c.cycle.into_iter().map(|i| g.label(i).clone()).collect())
}

/// For every vertex, the least level reachable along a nonempty strictly
/// descending path, so coverage queries are answered in constant time.
#[derive(Debug, Clone)]
pub struct CoverIndex {
    lowest: Vec<Option<Ordinal>>,
}

impl CoverIndex {
    pub fn new<V: Levelled>(g: &OrdGraph<V>) -> Self {
        let mut lowest: Vec<Option<Ordinal>> = Vec::with_capacity(g.vertex_count());
        for i in 0..g.vertex_count() {
            let best = g
                .lower_neighbors(i)
                .map(|j| match &lowest[j] {
                    Some(deeper) => deeper.min(g.label(j).level()).clone(),
                    None => g.label(j).level().clone(),
                })
                .min();
            lowest.push(best);
        }
        Self { lowest }
    }

    /// The least level reachable from vertex `i` by a descending path.
    pub fn lowest_reachable(&self, i: usize) -> Option<&Ordinal> {
        self.lowest[i].as_ref()
    }

    pub fn is_covered(&self, i: usize, delta: &Ordinal) -> bool {
        self.lowest[i].as_ref().is_some_and(|low| low <= delta)
    }
}

/// Whether a strictly descending path from `beta` reaches a vertex whose
/// level is at most `delta`.
pub fn is_delta_covered<V: Levelled>(g: &OrdGraph<V>, beta: &V, delta: &Ordinal) -> Result<bool, VerifyError> {
    let i = g
        .index_of(beta)
        .ok_or_else(|| VerifyError::NotAVertex(beta.to_string()))?;
    // depth-first over descending edges; the graphs here are small
    let mut stack = vec![i];
    let mut seen = vec![false; g.vertex_count()];
    while let Some(u) = stack.pop() {
        for j in g.lower_neighbors(u) {
            if g.label(j).level() <= delta {
                return Ok(true);
            }
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: String,
    pub rule: String,
    pub detail: String,
}

/// Checks the finite consequences of the construction's sparseness rules:
///
/// * non-limit levels have no lower neighbors;
/// * a limit-level vertex has at most `max_lower` lower neighbors, one per
///   stream step;
/// * listing the lower neighbors of `β` increasingly as `α_0 < α_1 < …`,
///   each `α_j` lies strictly above `C_β(j)`. Hence for every `γ` at most
///   `|{k : C_β(k) < γ}|` lower neighbors lie below `γ`.
pub fn check_hm_sparseness<V: Levelled>(g: &OrdGraph<V>, ladders: &LadderSystem, max_lower: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |v: &V, rule: &str, detail: String| {
        out.push(Violation {
            vertex: v.to_string(),
            rule: rule.to_string(),
            detail,
        })
    };
    for i in 0..g.vertex_count() {
        let beta = g.label(i);
        let level = beta.level();
        let lower: Vec<usize> = g.lower_neighbors(i).collect();
        if lower.is_empty() {
            continue;
        }
        if !level.is_limit() {
            push(beta, "successor-isolated", format!("{} lower neighbors", lower.len()));
            continue;
        }
        if lower.len() > max_lower {
            push(beta, "one-per-step", format!("{} lower neighbors > {max_lower} steps", lower.len()));
        }
        for (j, &a) in lower.iter().enumerate() {
            let alpha = g.label(a).level();
            if alpha >= level {
                push(beta, "below", format!("neighbor level {alpha} not below {level}"));
            }
            match ladders.c_at(level, j) {
                Ok(c) if alpha > c => {}
                Ok(c) => push(beta, "ladder-bound", format!("neighbor #{j} at {alpha} is not above C({j}) = {c}")),
                Err(e) => push(beta, "ladder-bound", e.to_string()),
            }
        }
    }
    out
}

/// Whether every edge `{x, y}` maps to an edge `{image(x), image(y)}` of
/// `G(t)`.
pub fn check_homomorphism<V, F>(g: &OrdGraph<V>, image: F, t: &DisjointType) -> Result<bool, VerifyError>
where
    V: Levelled,
    F: Fn(&V) -> Option<Vec<Ordinal>>,
{
    Ok(homomorphism_failures(g, image, t)?.is_empty())
}

/// The edges that [`check_homomorphism`] rejects, as label pairs.
pub fn homomorphism_failures<V, F>(g: &OrdGraph<V>, image: F, t: &DisjointType) -> Result<Vec<(V, V)>, VerifyError>
where
    V: Levelled,
    F: Fn(&V) -> Option<Vec<Ordinal>>,
{
    let images = g
        .labels()
        .iter()
        .map(|v| image(v).ok_or_else(|| VerifyError::MissingImage(v.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(g.graph()
        .edges()
        .filter(|&(u, v)| !is_edge(t, &images[u], &images[v]).unwrap_or(false))
        .map(|(u, v)| (g.label(u).clone(), g.label(v).clone()))
        .collect())
}

/// One named verifier of [`verify_hm_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Sparseness,
    SpecialCycle,
    OddCycle,
    Homomorphism,
    Uncovered,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Sparseness,
        Check::SpecialCycle,
        Check::OddCycle,
        Check::Homomorphism,
        Check::Uncovered,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Sparseness => "sparseness",
            Check::SpecialCycle => "special-cycle",
            Check::OddCycle => "odd-cycle",
            Check::Homomorphism => "homomorphism",
            Check::Uncovered => "uncovered",
        }
    }
}

impl std::str::FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, check: Check, violations: Vec<String>) {
        self.checks.push(CheckOutcome { check, passed: violations.is_empty(), violations });
    }
}

/// Runs the selected verifiers against a graph built with Specker type
/// `t^n_s` and at most `max_lower` lower neighbors per vertex. Vertices map
/// to `C_level[n]`; odd cycles are searched up to length `2s+1`; a vertex
/// on a limit level must not be `C_level(n)`-covered.
pub fn verify_hm_graph<V: Levelled>(
    g: &OrdGraph<V>,
    ladders: &LadderSystem,
    n: usize,
    s: usize,
    max_lower: usize,
    checks: &[Check],
) -> SuiteReport {
    let mut report = SuiteReport::default();
    for &check in checks {
        let violations = match check {
            Check::Sparseness => check_hm_sparseness(g, ladders, max_lower)
                .into_iter()
                .map(|v| format!("{} [{}]: {}", v.vertex, v.rule, v.detail))
                .collect(),
            Check::SpecialCycle => find_special_cycle_labels(g)
                .map(|c| vec![labels_to_string(&c)])
                .unwrap_or_default(),
            Check::OddCycle => shortest_odd_cycle_labels(g, 2 * s + 1)
                .map(|c| vec![labels_to_string(&c)])
                .unwrap_or_default(),
            Check::Homomorphism => match crate::types::specker_type(n, s) {
                Err(e) => vec![e.to_string()],
                Ok(t) => {
                    let image = |v: &V| ladders.c_prefix(v.level(), n).ok().map(<[Ordinal]>::to_vec);
                    match homomorphism_failures(g, image, &t) {
                        Ok(bad) => bad.iter().map(|(a, b)| format!("{a} -- {b}")).collect(),
                        Err(e) => vec![e.to_string()],
                    }
                }
            },
            Check::Uncovered => {
                let index = CoverIndex::new(g);
                (0..g.vertex_count())
                    .filter_map(|i| {
                        let level = g.label(i).level();
                        let delta = ladders.c_at(level, n).ok()?;
                        index
                            .is_covered(i, delta)
                            .then(|| format!("{} is {delta}-covered", g.label(i)))
                    })
                    .collect()
            }
        };
        report.push(check, violations);
    }
    report
}

fn labels_to_string<V: Display>(cycle: &[V]) -> String {
    cycle.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -- ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Universe;

    fn cycle_graph(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn odd_cycle_examples() {
        let tri = cycle_graph(3);
        let c = shortest_odd_cycle_upto(&tri, 3).unwrap();
        assert_eq!(c.length, 3);
        assert!(is_cycle(&tri, &c.cycle));

        let sq = cycle_graph(4);
        assert!(shortest_odd_cycle_upto(&sq, 101).is_none());

        let five = cycle_graph(5);
        assert!(shortest_odd_cycle_upto(&five, 3).is_none());
        assert_eq!(shortest_odd_cycle_upto(&five, 5).unwrap().length, 5);
    }

    #[test]
    fn odd_cycle_prefers_shortest() {
        // a 7-cycle with a chord making a 5-cycle, plus a pendant triangle far away
        let mut edges: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        edges.push((0, 4));
        let g = Graph::from_edges(7, edges.clone());
        assert_eq!(shortest_odd_cycle_upto(&g, 7).unwrap().length, 5);
        edges.extend([(7, 8), (8, 9), (9, 7), (6, 7)]);
        let g = Graph::from_edges(10, edges);
        let c = shortest_odd_cycle_upto(&g, 7).unwrap();
        assert_eq!(c.length, 3);
        assert_eq!({ let mut v = c.cycle.clone(); v.sort(); v }, [7, 8, 9]);
    }

    #[test]
    fn special_cycle_definition_instance() {
        // vertices are their own indices: 3, 7, 8, 10
        let g = Graph::from_edges(11, [(10, 7), (7, 3), (3, 8), (8, 10)]);
        let c = find_special_cycle(&g).unwrap();
        assert_eq!(c, [10, 7, 3, 8]);
        assert!(is_special_cycle(&g, &[10, 7, 3, 8]));
    }

    #[test]
    fn every_triangle_is_special() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        // exhaustive: exactly the rotations/reflections starting at the top qualify
        let orderings = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let special: Vec<_> = orderings.iter().filter(|c| is_special_cycle(&g, *c)).collect();
        assert_eq!(special, [&[2, 0, 1], &[2, 1, 0]]);
        assert!(find_special_cycle(&g).is_some());
    }

    #[test]
    fn acyclic_graph_has_no_special_cycle() {
        // double star
        let g = Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6), (4, 7)]);
        assert!(find_special_cycle(&g).is_none());
        // a zig-zag 4-cycle is not special: 0 < 2 > 1 < 3 > 0 has two local maxima
        let g = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]);
        assert!(find_special_cycle(&g).is_none());
    }

    fn ord_chain() -> OrdGraph<Ordinal> {
        let mut g = OrdGraph::new((1..=9).map(Ordinal::from_nat).collect());
        g.add_edge(&Ordinal::from_nat(9), &Ordinal::from_nat(5));
        g.add_edge(&Ordinal::from_nat(5), &Ordinal::from_nat(2));
        g
    }

    #[test]
    fn delta_covered_examples() {
        let g = ord_chain();
        let nine = Ordinal::from_nat(9);
        assert!(is_delta_covered(&g, &nine, &Ordinal::from_nat(2)).unwrap());
        assert!(!is_delta_covered(&g, &nine, &Ordinal::from_nat(1)).unwrap());
        assert!(!is_delta_covered(&g, &Ordinal::from_nat(7), &Ordinal::from_nat(3)).unwrap());
        assert!(is_delta_covered(&g, &Ordinal::from_nat(20), &Ordinal::zero()).is_err());
        let idx = CoverIndex::new(&g);
        assert_eq!(idx.lowest_reachable(8), Some(&Ordinal::from_nat(2)));
        assert!(idx.is_covered(8, &Ordinal::from_nat(2)));
        assert!(!idx.is_covered(8, &Ordinal::from_nat(1)));
    }

    #[test]
    fn homomorphism_examples() {
        let t: DisjointType = "001011".parse().unwrap();
        let g = OrdGraph::new(vec![Ordinal::from_nat(1), Ordinal::from_nat(2)]);
        assert!(check_homomorphism(&g, |_| Some(vec![]), &t).unwrap());

        let mut g = g;
        g.add_edge(&Ordinal::from_nat(1), &Ordinal::from_nat(2));
        let same = |_: &Ordinal| Some(vec![Ordinal::from_nat(0), Ordinal::from_nat(1), Ordinal::from_nat(3)]);
        assert!(!check_homomorphism(&g, same, &t).unwrap());
        let good = |v: &Ordinal| {
            let set: &[u64] = if v.as_nat() == Some(1) { &[0, 1, 3] } else { &[2, 4, 5] };
            Some(set.iter().map(|&x| Ordinal::from_nat(x)).collect())
        };
        assert!(check_homomorphism(&g, good, &t).unwrap());
        assert!(matches!(
            check_homomorphism(&g, |_| None, &t),
            Err(VerifyError::MissingImage(_))
        ));
    }

    #[test]
    fn sparseness_flags_ladder_bound() {
        let u = Universe::new(4, 3).unwrap();
        let ladders = LadderSystem::canonical(&u);
        let mut g = OrdGraph::new(u.limits().collect());
        // C_{w*3}(0) = w*2, so w is too low to be the first lower neighbor
        g.add_edge(&Ordinal::omega_mul(3), &Ordinal::omega_mul(1));
        let v = check_hm_sparseness(&g, &ladders, 3);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, "ladder-bound");
        assert!(check_hm_sparseness(&g, &ladders, 0).iter().any(|v| v.rule == "one-per-step"));
    }
}
