//! The slow-growth HM construction: parameters derived from a target
//! function `f`, edges labeled by the least step witnessing them, and the
//! edge partition behind the bound `χ(H) ≤ 2^{k+1}` for `|H| ≤ f(k)`.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Serialize;

use crate::coloring::{exact_chromatic, sample_connected_subsets, ColoringError};
use crate::csequence::LadderSystem;
use crate::graph::{Graph, OrdGraph};
use crate::hmbuild::{BuildError, Stream};
use crate::ordinal::{enum_below, Ordinal};
use crate::types::{specker_type, DisjointType};

/// Per step `k`: `s_k`, `n_k = 2s_k²+1`, the interval `I_k` of ladder
/// indices with `|I_k| = n_k`, and the stream position `ℓ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthParams {
    pub f: Vec<u64>,
    pub s: Vec<usize>,
    pub n: Vec<usize>,
    pub intervals: Vec<Range<usize>>,
    pub ell: Vec<usize>,
}

/// Least `s > 0` with `f ≤ 2s + 1`.
pub fn least_s(f: u64) -> usize {
    (f.saturating_sub(1).div_ceil(2)).max(1) as usize
}

impl GrowthParams {
    pub fn k_max(&self) -> usize {
        self.f.len() - 1
    }

    /// The number of ladder entries the construction reads.
    pub fn width_needed(&self) -> usize {
        self.intervals.last().map_or(0, |r| r.end)
    }

    /// `t^{n_k}_{s_k}`.
    pub fn specker(&self, k: usize) -> DisjointType {
        specker_type(self.n[k], self.s[k]).expect("n_k = 2s_k^2+1 > s_k")
    }
}

/// Derives the parameters for `k = 0, …, k_max` from `f(0), …, f(k_max)`,
/// with `ℓ_k = k`.
pub fn derive_params(f: &[u64], k_max: usize) -> GrowthParams {
    derive_with_positions(f[..=k_max].to_vec(), (0..=k_max).collect())
}

fn derive_with_positions(f: Vec<u64>, ell: Vec<usize>) -> GrowthParams {
    let s: Vec<usize> = f.iter().map(|&v| least_s(v)).collect();
    let n: Vec<usize> = s.iter().map(|&s| 2 * s * s + 1).collect();
    let mut start = 0;
    let intervals = n
        .iter()
        .map(|&len| {
            let r = start..start + len;
            start += len;
            r
        })
        .collect();
    GrowthParams { f, s, n, intervals, ell }
}

/// Name mode: `f(j) = r(2j+1) mod (cap+1)` is read off the stream itself,
/// so the least `ℓ ≥ k` for which `r↾ℓ` decides `f(0), …, f(k)` is
/// `ℓ_k = 2k + 2`.
pub fn derive_params_named(stream: &Stream, cap: u64, k_max: usize) -> GrowthParams {
    let f = (0..=k_max).map(|j| named_value(stream, cap, j)).collect();
    derive_with_positions(f, (0..=k_max).map(|k| 2 * k + 2).collect())
}

pub fn named_value(stream: &Stream, cap: u64, j: usize) -> u64 {
    stream.read(2 * j + 1) % (cap + 1)
}

/// The bookkeeping attached to a stream prefix `p` in name mode: the
/// minimal extension `p'` deciding `f(j)` for `j ≤ |p|`, the resulting
/// `s_{p,j}` and `n_{p,j}`, their sum `n*_p`, and the concatenated type
/// `t_p` of width `n*_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NameBookkeeping {
    pub p_prime: Vec<u64>,
    pub s: Vec<usize>,
    pub n: Vec<usize>,
    pub n_star: usize,
    pub t: DisjointType,
}

pub fn name_bookkeeping(stream: &Stream, p_len: usize, cap: u64) -> NameBookkeeping {
    let p_prime = stream.take(p_len.max(2 * p_len + 2));
    let decided = Stream::new(stream.seed).with_prefix(p_prime.clone());
    let s: Vec<usize> = (0..=p_len).map(|j| least_s(named_value(&decided, cap, j))).collect();
    let n: Vec<usize> = s.iter().map(|&s| 2 * s * s + 1).collect();
    let t = s
        .iter()
        .zip(&n)
        .map(|(&s, &n)| specker_type(n, s).expect("n > s"))
        .reduce(|a, b| a.concat(&b))
        .expect("at least one block");
    NameBookkeeping {
        p_prime,
        n_star: n.iter().sum(),
        s,
        n,
        t,
    }
}

/// A built growth graph. `labels` maps each edge, as a vertex-index pair
/// `(lower, upper)`, to the least step `k` witnessing it.
#[derive(Debug, Clone)]
pub struct GrowthBuild {
    pub graph: OrdGraph<Ordinal>,
    pub labels: BTreeMap<(usize, usize), usize>,
    pub params: GrowthParams,
}

impl GrowthBuild {
    pub fn label(&self, u: usize, v: usize) -> Option<usize> {
        self.labels.get(&(u.min(v), u.max(v))).copied()
    }
}

/// Joins each limit `β` to every limit `α < β` for which some `k ≤ k_max`
/// has `α ≥ C_β(k)`, `e_β(r(ℓ_k)) = α`, and
/// `type(C_α[I_j], C_β[I_j]) ∈ {t^{n_j}_{s_j}, its opposite}` for all `j ≤ k`.
pub fn build_growth_hm(ladders: &LadderSystem, stream: &Stream, params: &GrowthParams) -> Result<GrowthBuild, BuildError> {
    let u = ladders.universe();
    if params.width_needed() > u.prefix_width() {
        return Err(BuildError::Params(format!(
            "the intervals need {} ladder entries, the prefix width is {}",
            params.width_needed(),
            u.prefix_width()
        )));
    }
    let types: Vec<DisjointType> = (0..params.f.len()).map(|k| params.specker(k)).collect();
    let mut graph = OrdGraph::new(u.limits().collect());
    let mut labels = BTreeMap::new();
    for beta in u.limits() {
        for k in 0..params.f.len() {
            let alpha = enum_below(&beta, stream.read(params.ell[k]))?;
            if !alpha.is_limit() {
                continue;
            }
            let err = |source| BuildError::Ladder {
                beta: beta.clone(),
                k,
                source,
            };
            if &alpha < ladders.c_at(&beta, k).map_err(err)? {
                continue;
            }
            let mut ok = true;
            for j in 0..=k {
                let a = ladders.c_slice(&alpha, params.intervals[j].clone()).map_err(err)?;
                let b = ladders.c_slice(&beta, params.intervals[j].clone()).map_err(err)?;
                if !crate::specker::is_edge(&types[j], a, b)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                graph.add_edge(&alpha, &beta);
                let key = (graph.index_of(&alpha).unwrap(), graph.index_of(&beta).unwrap());
                labels.entry(key).or_insert(k);
            }
        }
    }
    Ok(GrowthBuild {
        graph,
        labels,
        params: params.clone(),
    })
}

/// The edge partition `H_0, …, H_{k−1}, H_{≥k}`, each on the full vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClasses {
    pub layers: Vec<Graph>,
    pub residue: Graph,
}

/// Splits `g` by edge label; `label` must be defined on every edge.
pub fn classify_edges(g: &Graph, label: impl Fn(usize, usize) -> usize, k: usize) -> EdgeClasses {
    let layers = (0..k).map(|j| g.filter_edges(|u, v| label(u, v) == j)).collect();
    let residue = g.filter_edges(|u, v| label(u, v) >= k);
    EdgeClasses { layers, residue }
}

/// One sampled subgraph `H`: `χ(H)`, `χ(H_j)` for `j < k`, and `χ(H_{≥k})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionSample {
    pub vertices: Vec<usize>,
    pub chi: usize,
    pub layer_chi: Vec<usize>,
    pub residue_chi: usize,
}

impl DecompositionSample {
    pub fn product(&self) -> usize {
        self.residue_chi * self.layer_chi.iter().product::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub k: usize,
    pub f_k: usize,
    pub bound: usize,
    pub samples: Vec<DecompositionSample>,
    pub skipped: usize,
}

impl DecompositionReport {
    pub fn max_chi(&self) -> usize {
        self.samples.iter().map(|s| s.chi).max().unwrap_or(0)
    }

    /// Samples breaking `χ(H) ≤ 2^{k+1}` or `χ(H) ≤ χ(H_{≥k})·∏ χ(H_j)`.
    pub fn failures(&self) -> Vec<&DecompositionSample> {
        self.samples
            .iter()
            .filter(|s| s.chi > self.bound || s.chi > s.product())
            .collect()
    }

    /// Samples with a layer that is not 2-colorable or a residue with an odd
    /// cycle, contrary to the forest and homomorphism arguments.
    pub fn layer_anomalies(&self) -> Vec<&DecompositionSample> {
        self.samples
            .iter()
            .filter(|s| s.residue_chi > 2 || s.layer_chi.iter().any(|&c| c > 2))
            .collect()
    }
}

/// Samples connected vertex sets of at most `f(k)` vertices, using the same
/// sampler and seed as [`crate::coloring::verify_growth_bound`], and
/// computes all three sides of the decomposition inequality on each.
pub fn check_decomposition(build: &GrowthBuild, k: usize, samples: usize, seed: u64, budget: u64) -> DecompositionReport {
    let g = build.graph.graph();
    let f_k = build.params.f[k] as usize;
    let mut report = DecompositionReport {
        k,
        f_k,
        bound: 1 << (k + 1),
        samples: Vec::new(),
        skipped: 0,
    };
    for set in sample_connected_subsets(g, f_k, samples, seed) {
        let h = g.induced(&set);
        let classes = classify_edges(&h, |u, v| build.label(set[u], set[v]).expect("labeled edge"), k);
        let solve = |x: &Graph| exact_chromatic(x, budget).map(|s| s.chi);
        let result: Result<DecompositionSample, ColoringError> = (|| {
            Ok(DecompositionSample {
                chi: solve(&h)?,
                layer_chi: classes.layers.iter().map(solve).collect::<Result<_, _>>()?,
                residue_chi: solve(&classes.residue)?,
                vertices: set.clone(),
            })
        })();
        match result {
            Ok(sample) => report.samples.push(sample),
            Err(_) => report.skipped += 1,
        }
    }
    report
}
