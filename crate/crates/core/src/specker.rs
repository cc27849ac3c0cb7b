//! Type graphs `G(t)` restricted to the `n`-subsets of `{0, …, N−1}`.
//!
//! Vertices are the `n`-subsets in colexicographic order (bitmasks compared
//! as integers), so vertex `i` is the subset of colex rank `i` and the graph
//! on `N` points is an induced subgraph of the graph on `N + 1` points.
//! Every `2n`-subset of the ground set splits into exactly one unordered
//! pair realizing `t`, so `G(t)` on `N` points has `C(N, 2n)` edges.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::graphprops::{shortest_odd_cycle_upto, OddCycle};
use crate::types::{type_of, DisjointType, TypeError};

/// Materialization refuses more vertices than this.
pub const MAX_VERTICES: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpeckerError {
    #[error("sets must have the type's width {width}, got {got}")]
    WrongSize { width: usize, got: usize },
    #[error("N = {n_points} admits no edge for width {width} (need N >= {})", 2 * width)]
    TooFewPoints { n_points: usize, width: usize },
    #[error("N = {0} exceeds the 64-point limit of the bitmask encoding")]
    TooManyPoints(usize),
    #[error("{0} vertices exceed the materialization limit")]
    TooLarge(u64),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Whether `{a, b}` is an edge of `G(t)`.
pub fn is_edge<T: Ord>(t: &DisjointType, a: &[T], b: &[T]) -> Result<bool, SpeckerError> {
    let width = t.width();
    for len in [a.len(), b.len()] {
        if len != width {
            return Err(SpeckerError::WrongSize { width, got: len });
        }
    }
    match type_of(a, b) {
        Ok(ty) => Ok(ty.matches_either(t)),
        Err(TypeError::NotDisjoint) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

/// Binomial coefficient with saturation.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Next integer with the same popcount (Gosper's hack).
fn next_same_popcount(x: u64) -> Option<u64> {
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

/// All `k`-subsets of `{0..n}` as bitmasks in colex order.
pub fn subsets_colex(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let first = if k == 0 { 0 } else if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut next = (k <= n).then_some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { next_same_popcount(cur).filter(|&x| x & !limit == 0 && x > cur) };
        Some(cur)
    })
}

pub fn mask_to_set(mask: u64) -> Vec<u64> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn set_to_mask(set: &[u64]) -> u64 {
    set.iter().fold(0, |m, &x| m | 1 << x)
}

/// Colex rank of a subset: `Σ C(s_i, i + 1)` over its increasing elements.
pub fn colex_rank(mask: u64) -> u64 {
    mask_to_set(mask)
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial(s, i as u64 + 1))
        .sum()
}

/// Splits a `2n`-subset into the pair `(a, b)` with `type(a, b) = t`.
fn split_by_type(t: &DisjointType, union: u64) -> (u64, u64) {
    let (mut a, mut b) = (0u64, 0u64);
    let mut bits = t.bits().iter();
    for x in 0..64 {
        if union >> x & 1 == 1 {
            if *bits.next().expect("union has 2n elements") {
                b |= 1 << x;
            } else {
                a |= 1 << x;
            }
        }
    }
    (a, b)
}

fn check_points(t: &DisjointType, n_points: usize) -> Result<(), SpeckerError> {
    if n_points > 64 {
        return Err(SpeckerError::TooManyPoints(n_points));
    }
    if n_points < 2 * t.width() {
        return Err(SpeckerError::TooFewPoints {
            n_points,
            width: t.width(),
        });
    }
    Ok(())
}

/// `G(t)` on the `n`-subsets of `{0..N}`.
#[derive(Debug, Clone)]
pub struct TypeGraph {
    t: DisjointType,
    n_points: usize,
    vertices: Vec<u64>,
    graph: Graph,
}

impl TypeGraph {
    pub fn ty(&self) -> &DisjointType {
        &self.t
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Vertex `i` as a bitmask.
    pub fn vertex_mask(&self, i: usize) -> u64 {
        self.vertices[i]
    }

    pub fn vertex_set(&self, i: usize) -> Vec<u64> {
        mask_to_set(self.vertices[i])
    }

    pub fn vertex_index(&self, mask: u64) -> Option<usize> {
        let r = colex_rank(mask) as usize;
        (mask.count_ones() as usize == self.t.width() && self.vertices.get(r) == Some(&mask)).then_some(r)
    }

    /// Spelling of vertex `i`, e.g. `{0,1,3}`.
    pub fn vertex_name(&self, i: usize) -> String {
        let inner: Vec<String> = self.vertex_set(i).iter().map(u64::to_string).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// Materializes `G(t)` over `N` points with the complete edge set.
pub fn materialize(t: &DisjointType, n_points: usize) -> Result<TypeGraph, SpeckerError> {
    check_points(t, n_points)?;
    let width = t.width();
    let count = binomial(n_points as u64, width as u64);
    if count > MAX_VERTICES {
        return Err(SpeckerError::TooLarge(count));
    }
    let vertices: Vec<u64> = subsets_colex(n_points, width).collect();
    debug_assert_eq!(vertices.len() as u64, count);
    let edges: Vec<(usize, usize)> = subsets_colex(n_points, 2 * width)
        .map(|union| {
            let (a, b) = split_by_type(t, union);
            (colex_rank(a) as usize, colex_rank(b) as usize)
        })
        .collect();
    let graph = Graph::from_edges(vertices.len(), edges);
    Ok(TypeGraph {
        t: t.clone(),
        n_points,
        vertices,
        graph,
    })
}

/// Number of edges of `G(t)` over `N` points, without materializing.
pub fn edge_count(t: &DisjointType, n_points: usize) -> u64 {
    binomial(n_points as u64, 2 * t.width() as u64)
}

/// Neighbors of the vertex `a` in `G(t)` over `N` points, computed directly
/// from the type rather than from a materialized graph, in increasing mask
/// (colex) order.
///
/// With `a` in the role of the zeros of `t` (or of `t̄`), the word fixes how
/// many points of `b` fall before `a(0)`, between consecutive points of `a`
/// and after `a(n−1)`; `b` is any choice of that many free points per gap.
pub fn neighbors_of(t: &DisjointType, n_points: usize, a: u64) -> Vec<u64> {
    let width = t.width();
    let a_set = mask_to_set(a);
    if a_set.len() != width {
        return Vec::new();
    }
    let mut out = Vec::new();
    for word in [t.clone(), t.opposite()] {
        let mut gaps = vec![0usize; width + 1];
        let mut zeros = 0;
        for &bit in word.bits() {
            if bit {
                gaps[zeros] += 1;
            } else {
                zeros += 1;
            }
        }
        let mut regions: Vec<Vec<u64>> = vec![Vec::new(); width + 1];
        let mut region = 0;
        for x in 0..n_points as u64 {
            if a >> x & 1 == 1 {
                region += 1;
            } else {
                regions[region].push(x);
            }
        }
        fill_gaps(&regions, &gaps, 0, 0, &mut out);
    }
    out.sort_unstable();
    out
}

fn fill_gaps(regions: &[Vec<u64>], gaps: &[usize], i: usize, acc: u64, out: &mut Vec<u64>) {
    if i == regions.len() {
        out.push(acc);
        return;
    }
    if regions[i].len() < gaps[i] {
        return;
    }
    for sel in subsets_colex(regions[i].len(), gaps[i]) {
        let chosen = mask_to_set(sel).iter().fold(0u64, |m, &j| m | 1 << regions[i][j as usize]);
        fill_gaps(regions, gaps, i + 1, acc | chosen, out);
    }
}

/// Result of a sampled odd-cycle search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledOddCycleReport {
    pub samples: usize,
    pub largest_sample: usize,
    pub edges_examined: usize,
    /// First odd cycle found, as vertex sets.
    pub witness: Option<Vec<Vec<u64>>>,
}

/// Searches for odd cycles of length `≤ max_len` inside `samples` induced
/// subgraphs of `G(t)` over `N` points, each grown breadth-first from a
/// random edge endpoint up to `max_size` vertices. Used when the full graph
/// is too large to materialize.
pub fn sampled_odd_cycle_check(
    t: &DisjointType,
    n_points: usize,
    samples: usize,
    max_size: usize,
    max_len: usize,
    seed: u64,
) -> Result<SampledOddCycleReport, SpeckerError> {
    check_points(t, n_points)?;
    let width = t.width();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SampledOddCycleReport {
        samples,
        largest_sample: 0,
        edges_examined: 0,
        witness: None,
    };
    for _ in 0..samples {
        // a random vertex that has at least one neighbor: split a random 2n-set
        let mut points: Vec<u64> = (0..n_points as u64).collect();
        points.shuffle(&mut rng);
        let union = set_to_mask(&points[..2 * width]);
        let (start, _) = split_by_type(t, union);

        let mut members = vec![start];
        let mut queue = std::collections::VecDeque::from([start]);
        let mut seen = std::collections::HashSet::from([start]);
        while let Some(v) = queue.pop_front() {
            let mut nbrs = neighbors_of(t, n_points, v);
            nbrs.shuffle(&mut rng);
            for w in nbrs {
                if members.len() >= max_size {
                    break;
                }
                if seen.insert(w) {
                    members.push(w);
                    queue.push_back(w);
                }
            }
            if members.len() >= max_size {
                break;
            }
        }
        members.sort_unstable();
        let index = |m: u64| members.binary_search(&m).ok();
        let mut edges = Vec::new();
        for (i, &v) in members.iter().enumerate() {
            for w in neighbors_of(t, n_points, v) {
                if let Some(j) = index(w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        report.largest_sample = report.largest_sample.max(members.len());
        report.edges_examined += edges.len();
        let g = Graph::from_edges(members.len(), edges);
        if let Some(OddCycle { cycle, .. }) = shortest_odd_cycle_upto(&g, max_len) {
            report.witness = Some(cycle.iter().map(|&i| mask_to_set(members[i])).collect());
            return Ok(report);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::specker_type;

    #[test]
    fn is_edge_examples() {
        let t = specker_type(3, 1).unwrap();
        assert!(is_edge(&t, &[0, 1, 3], &[2, 4, 5]).unwrap());
        assert!(is_edge(&t, &[2, 4, 5], &[0, 1, 3]).unwrap());
        assert!(!is_edge(&t, &[0, 1, 3], &[0, 1, 3]).unwrap());
        assert!(!is_edge(&t, &[0, 1, 2], &[3, 4, 5]).unwrap());
        assert!(matches!(is_edge(&t, &[0, 1], &[2, 4, 5]), Err(SpeckerError::WrongSize { .. })));
    }

    #[test]
    fn colex_order_and_rank() {
        let all: Vec<u64> = subsets_colex(5, 2).collect();
        assert_eq!(all.len(), 10);
        for (i, &m) in all.iter().enumerate() {
            assert_eq!(colex_rank(m), i as u64);
        }
        assert_eq!(mask_to_set(all[0]), [0, 1]);
        assert_eq!(mask_to_set(all[1]), [0, 2]);
        assert_eq!(mask_to_set(all[2]), [1, 2]);
        assert_eq!(subsets_colex(3, 0).collect::<Vec<_>>(), [0]);
        assert_eq!(subsets_colex(2, 3).count(), 0);
        assert_eq!(subsets_colex(64, 63).count(), 64);
    }

    #[test]
    fn materialize_examples() {
        let t = specker_type(3, 1).unwrap();
        let g = materialize(&t, 6).unwrap();
        assert_eq!(g.graph().vertex_count(), 20);
        let a = g.vertex_index(set_to_mask(&[0, 1, 3])).unwrap();
        let b = g.vertex_index(set_to_mask(&[2, 4, 5])).unwrap();
        assert!(g.graph().has_edge(a, b));
        assert_eq!(g.vertex_name(a), "{0,1,3}");

        let single: DisjointType = "01".parse().unwrap();
        let g = materialize(&single, 4).unwrap();
        assert_eq!(g.graph().vertex_count(), 4);
        assert_eq!(g.graph().edge_count(), 6);

        assert!(matches!(materialize(&t, 5), Err(SpeckerError::TooFewPoints { .. })));
    }

    #[test]
    fn materialize_matches_pairwise_oracle() {
        for word in ["001011", "010101", "0011", "00011011"] {
            let t: DisjointType = word.parse().unwrap();
            for n_points in 2 * t.width()..=9 {
                let g = materialize(&t, n_points).unwrap();
                let count = g.graph().vertex_count();
                assert_eq!(count as u64, binomial(n_points as u64, t.width() as u64));
                assert_eq!(g.graph().edge_count() as u64, edge_count(&t, n_points));
                for i in 0..count {
                    for j in i + 1..count {
                        let expect = is_edge(&t, &g.vertex_set(i), &g.vertex_set(j)).unwrap();
                        assert_eq!(g.graph().has_edge(i, j), expect, "{word} N={n_points}");
                    }
                }
            }
        }
    }

    #[test]
    fn implicit_neighbors_match_materialized() {
        for word in ["001011", "010101", "0011", "01", "00011011"] {
            let t: DisjointType = word.parse().unwrap();
            let g = materialize(&t, 9).unwrap();
            for i in 0..g.graph().vertex_count() {
                let nbrs = neighbors_of(&t, 9, g.vertex_mask(i));
                assert!(nbrs.windows(2).all(|w| w[0] < w[1]));
                let got: Vec<usize> = nbrs.into_iter().map(|m| g.vertex_index(m).unwrap()).collect();
                let mut want = g.graph().neighbors(i).to_vec();
                want.sort_unstable();
                assert_eq!(got, want, "{word} at {}", g.vertex_name(i));
            }
        }
    }

    #[test]
    fn materialization_is_monotone_in_n() {
        let t = specker_type(3, 1).unwrap();
        for n in 6..11 {
            let small = materialize(&t, n).unwrap();
            let big = materialize(&t, n + 1).unwrap();
            let prefix: Vec<usize> = (0..small.graph().vertex_count()).collect();
            assert_eq!(&big.graph().induced(&prefix), small.graph());
        }
    }

    #[test]
    fn sampled_check_finds_triangles_when_present() {
        // width-1 graphs are complete, so triangles are everywhere
        let t: DisjointType = "01".parse().unwrap();
        let r = sampled_odd_cycle_check(&t, 6, 3, 10, 3, 1).unwrap();
        assert_eq!(r.witness.as_ref().map(Vec::len), Some(3));
        let t = specker_type(3, 1).unwrap();
        let r = sampled_odd_cycle_check(&t, 10, 20, 60, 3, 1).unwrap();
        assert!(r.witness.is_none());
        assert!(r.largest_sample > 1);
    }
}
