//! Disjoint type guessing checked by exhaustive search on a finite ladder
//! system, and the finite-condition poset that defeats guessing.
//!
//! A condition `p = (x_p, f_p)` pairs a finite set of ordinals with a finite
//! partial map from limits to `ω`, subject to:
//!
//! 1. `x_p` is a finite set of ordinals of the universe;
//! 2. `f_p` is defined on limits only;
//! 3. `α < β` in `dom(f_p)` with `f_p(α) = f_p(β) = k` never realize
//!    `t_k` or its opposite on `C[n_k]`;
//! 4. for `δ ∈ x_p` and `β ∈ dom(f_p)` above `δ` with `k = f_p(β)`, either
//!    (a) `d_k > |C_β ∩ δ| + 1`, or (b) some `α ≤ δ` in `dom(f_p)` has
//!    `f_p(α) = k` and `C_α[n_k] = C_β[n_k]`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::csequence::{CountBound, LadderError, LadderSystem};
use crate::ordinal::Ordinal;
use crate::types::{try_type_of, DisjointType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessError {
    #[error("no type t_{0} in the sequence")]
    NoType(usize),
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error("{0} is not a limit of the universe")]
    NotALimit(Ordinal),
    #[error("|C_{beta} ∩ {delta}| is not determined by the stored prefix")]
    Undetermined { beta: Ordinal, delta: Ordinal },
    #[error("no unused k has depth at least {required}")]
    NoAdmissibleK { required: usize },
}

/// `⟨t_k : k < len⟩`, with `d_k = depth(t_k)` and `n_k = width(t_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeSequence {
    types: Vec<DisjointType>,
}

impl TypeSequence {
    pub fn new(types: Vec<DisjointType>) -> Self {
        Self { types }
    }

    pub fn constant(t: DisjointType, len: usize) -> Self {
        Self { types: vec![t; len] }
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn get(&self, k: usize) -> Result<&DisjointType, GuessError> {
        self.types.get(k).ok_or(GuessError::NoType(k))
    }

    pub fn depth(&self, k: usize) -> Result<usize, GuessError> {
        Ok(self.get(k)?.depth())
    }

    pub fn width(&self, k: usize) -> Result<usize, GuessError> {
        Ok(self.get(k)?.width())
    }

    pub fn max_depth(&self) -> usize {
        self.types.iter().map(DisjointType::depth).max().unwrap_or(0)
    }

    pub fn max_width(&self) -> usize {
        self.types.iter().map(DisjointType::width).max().unwrap_or(0)
    }
}

/// The finite stand-in for unbounded depth: how deep the sequence goes
/// compared with the largest `|C_β ∩ δ|` a prefix can certify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DepthHeadroom {
    pub max_depth: usize,
    pub prefix_width: usize,
}

pub fn depth_headroom(ladders: &LadderSystem, types: &TypeSequence) -> DepthHeadroom {
    DepthHeadroom {
        max_depth: types.max_depth(),
        prefix_width: ladders.width(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuessWitness {
    pub alpha: Ordinal,
    pub beta: Ordinal,
    pub k: usize,
    pub realized: DisjointType,
}

/// Whether `α < β` realize `t_k` or its opposite on `C[n_k]`.
fn realizes(ladders: &LadderSystem, types: &TypeSequence, alpha: &Ordinal, beta: &Ordinal, k: usize) -> Result<Option<DisjointType>, GuessError> {
    let t = types.get(k)?;
    let n = t.width();
    let a = ladders.c_prefix(alpha, n)?;
    let b = ladders.c_prefix(beta, n)?;
    Ok(try_type_of(a, b).filter(|ty| ty.matches_either(t)))
}

/// Searches all pairs `α < β` of limits for `f(α) = f(β) = k` with
/// `type(C_α[n_k], C_β[n_k]) ∈ {t_k, t̄_k}`; the first pair in order of
/// `(β, α)` is returned.
pub fn check_guessing(ladders: &LadderSystem, types: &TypeSequence, f: &dyn Fn(&Ordinal) -> usize) -> Result<Option<GuessWitness>, GuessError> {
    let u = ladders.universe();
    for beta in u.limits() {
        let k = f(&beta);
        for alpha in u.limits_below(&beta) {
            if f(&alpha) != k {
                continue;
            }
            if let Some(realized) = realizes(ladders, types, &alpha, &beta, k)? {
                return Ok(Some(GuessWitness {
                    alpha,
                    beta: beta.clone(),
                    k,
                    realized,
                }));
            }
        }
    }
    Ok(None)
}

/// Re-checks a witness from scratch.
pub fn verify_witness(ladders: &LadderSystem, types: &TypeSequence, f: &dyn Fn(&Ordinal) -> usize, w: &GuessWitness) -> bool {
    w.alpha < w.beta
        && f(&w.alpha) == w.k
        && f(&w.beta) == w.k
        && matches!(realizes(ladders, types, &w.alpha, &w.beta, w.k), Ok(Some(ref t)) if *t == w.realized)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongWitness {
    pub beta: Ordinal,
    pub k: usize,
    /// `witnesses[i]` clears `thresholds[i]`.
    pub witnesses: Vec<Ordinal>,
    /// `None` where the threshold would fall below `ω`.
    pub thresholds: Vec<Option<Ordinal>>,
}

/// Looks for `β` with `k = f(β)` and `m` distinct guessing partners `α < β`,
/// the `i`-th of which has `C_α(n_k) > η_i` for the descending thresholds
/// `η_i = ω·(b−1−i)`, `i = 1, …, m`, when `β = ω·b`. (No `α < β` can clear
/// `ω·(b−1)`.) Thresholds below `ω` impose nothing.
pub fn check_strong_guessing(
    ladders: &LadderSystem,
    types: &TypeSequence,
    f: &dyn Fn(&Ordinal) -> usize,
    m: usize,
) -> Result<Option<StrongWitness>, GuessError> {
    let u = ladders.universe();
    for beta in u.limits() {
        let k = f(&beta);
        let n = types.width(k)?;
        let b = beta.as_omega_linear().expect("limits are w*b").0;
        let thresholds: Vec<Option<Ordinal>> = (1..=m as u64)
            .map(|i| (b > i + 1).then(|| Ordinal::omega_mul(b - 1 - i)))
            .collect();
        let mut partners = Vec::new();
        for alpha in u.limits_below(&beta) {
            if f(&alpha) == k && realizes(ladders, types, &alpha, &beta, k)?.is_some() {
                partners.push((ladders.c_at(&alpha, n)?.clone(), alpha));
            }
        }
        // thresholds decrease, so the admissible sets grow with i and a
        // greedy assignment succeeds iff the i-th set has at least i members
        let mut used = vec![false; partners.len()];
        let mut witnesses = Vec::with_capacity(m);
        for eta in &thresholds {
            let pick = partners
                .iter()
                .enumerate()
                .find(|(j, (c, _))| !used[*j] && eta.as_ref().is_none_or(|eta| c > eta));
            match pick {
                Some((j, (_, alpha))) => {
                    used[j] = true;
                    witnesses.push(alpha.clone());
                }
                None => break,
            }
        }
        if witnesses.len() == m {
            return Ok(Some(StrongWitness {
                beta,
                k,
                witnesses,
                thresholds,
            }));
        }
    }
    Ok(None)
}

/// A condition `(x_p, f_p)`; serialized as `{"x": [...], "f": {α: k}}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PosetCondition {
    pub x: BTreeSet<Ordinal>,
    pub f: BTreeMap<Ordinal, usize>,
}

impl PosetCondition {
    pub fn new(x: impl IntoIterator<Item = Ordinal>, f: impl IntoIterator<Item = (Ordinal, usize)>) -> Self {
        Self {
            x: x.into_iter().collect(),
            f: f.into_iter().collect(),
        }
    }

    /// `q ≤ p`: `q` extends `p` in both coordinates.
    pub fn extends(&self, p: &PosetCondition) -> bool {
        p.x.is_subset(&self.x) && p.f.iter().all(|(a, k)| self.f.get(a) == Some(k))
    }

    /// The coordinatewise union, or `None` when the maps disagree.
    pub fn union(&self, other: &PosetCondition) -> Option<PosetCondition> {
        let mut f = self.f.clone();
        for (a, &k) in &other.f {
            if *f.entry(a.clone()).or_insert(k) != k {
                return None;
            }
        }
        Some(PosetCondition {
            x: self.x.union(&other.x).cloned().collect(),
            f,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseViolation {
    pub clause: u8,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ConditionReport {
    pub violations: Vec<ClauseViolation>,
}

impl ConditionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, clause: u8) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }
}

fn clause3(ladders: &LadderSystem, types: &TypeSequence, alpha: &Ordinal, beta: &Ordinal, k: usize) -> Result<Option<ClauseViolation>, GuessError> {
    let (lo, hi) = if alpha < beta { (alpha, beta) } else { (beta, alpha) };
    Ok(realizes(ladders, types, lo, hi, k)?.map(|t| ClauseViolation {
        clause: 3,
        detail: format!("{lo} and {hi} share value {k} and realize {t}"),
    }))
}

fn clause4(
    ladders: &LadderSystem,
    types: &TypeSequence,
    f: &BTreeMap<Ordinal, usize>,
    delta: &Ordinal,
    beta: &Ordinal,
    k: usize,
) -> Result<Option<ClauseViolation>, GuessError> {
    let d = types.depth(k)?;
    let count = match ladders.count_below(beta, delta)? {
        CountBound::Exact(c) => c,
        // every stored entry lies below δ and d_k < n_k ≤ W, so (a) fails
        CountBound::AtLeast(c) if d <= c + 1 => c,
        CountBound::AtLeast(_) => {
            return Err(GuessError::Undetermined {
                beta: beta.clone(),
                delta: delta.clone(),
            })
        }
    };
    if d > count + 1 {
        return Ok(None);
    }
    let n = types.width(k)?;
    let target = ladders.c_prefix(beta, n)?;
    for (alpha, &j) in f.range(..=delta.clone()) {
        if j == k && ladders.c_prefix(alpha, n)? == target {
            return Ok(None);
        }
    }
    Ok(Some(ClauseViolation {
        clause: 4,
        detail: format!("delta = {delta}, beta = {beta}: d_{k} = {d} <= |C_beta ∩ delta| + 1 = {} and no partner", count + 1),
    }))
}

/// Checks all four clauses; the report lists every violation found.
pub fn validate_condition(p: &PosetCondition, ladders: &LadderSystem, types: &TypeSequence) -> Result<ConditionReport, GuessError> {
    let u = ladders.universe();
    let mut report = ConditionReport::default();
    for delta in &p.x {
        if !u.contains(delta) {
            report.violations.push(ClauseViolation {
                clause: 1,
                detail: format!("{delta} lies outside the universe"),
            });
        }
    }
    let mut f = BTreeMap::new();
    for (a, &k) in &p.f {
        if u.limit_index(a).is_none() {
            report.violations.push(ClauseViolation {
                clause: 2,
                detail: format!("{a} is not a limit of the universe"),
            });
        } else {
            f.insert(a.clone(), k);
        }
    }
    let entries: Vec<(&Ordinal, usize)> = f.iter().map(|(a, &k)| (a, k)).collect();
    for (i, &(alpha, k)) in entries.iter().enumerate() {
        for &(beta, j) in &entries[i + 1..] {
            if j == k {
                report.violations.extend(clause3(ladders, types, alpha, beta, k)?);
            }
        }
    }
    for delta in &p.x {
        for (beta, &k) in f.range((std::ops::Bound::Excluded(delta.clone()), std::ops::Bound::Unbounded)) {
            report.violations.extend(clause4(ladders, types, &f, delta, beta, k)?);
        }
    }
    Ok(report)
}

/// Extends `p` to a condition with `α` in the domain of `f`: with
/// `δ = max(x_p ∩ α)` (or `0`), the least `k` outside the range of `f_p`
/// with `d_k > |C_α ∩ δ| + 1`.
pub fn extend_into_domain(p: &PosetCondition, alpha: &Ordinal, ladders: &LadderSystem, types: &TypeSequence) -> Result<PosetCondition, GuessError> {
    if ladders.universe().limit_index(alpha).is_none() {
        return Err(GuessError::NotALimit(alpha.clone()));
    }
    if p.f.contains_key(alpha) {
        return Ok(p.clone());
    }
    let delta = p.x.range(..alpha.clone()).next_back().cloned().unwrap_or_else(Ordinal::zero);
    let count = ladders.count_below(alpha, &delta)?.lower();
    let used: BTreeSet<usize> = p.f.values().copied().collect();
    let k = (0..types.len())
        .find(|&k| !used.contains(&k) && types.get(k).is_ok_and(|t| t.depth() > count + 1))
        .ok_or(GuessError::NoAdmissibleK { required: count + 2 })?;
    let mut q = p.clone();
    q.f.insert(alpha.clone(), k);
    Ok(q)
}

/// Whether `p ∪ q` is a condition. Both inputs are assumed valid, so only
/// the pairs mixing the two conditions are examined.
pub fn compatible(p: &PosetCondition, q: &PosetCondition, ladders: &LadderSystem, types: &TypeSequence) -> Result<bool, GuessError> {
    let Some(union) = p.union(q) else {
        return Ok(false);
    };
    let only = |a: &PosetCondition, b: &PosetCondition| -> Vec<(Ordinal, usize)> {
        a.f.iter()
            .filter(|(x, _)| !b.f.contains_key(*x))
            .map(|(x, &k)| (x.clone(), k))
            .collect()
    };
    let (fp, fq) = (only(p, q), only(q, p));
    for (alpha, k) in &fp {
        for (beta, j) in &fq {
            if j == k && clause3(ladders, types, alpha, beta, *k)?.is_some() {
                return Ok(false);
            }
        }
    }
    // δ in both x-sets was already checked against both domains
    let x_only = |a: &PosetCondition, b: &PosetCondition| -> Vec<Ordinal> { a.x.difference(&b.x).cloned().collect() };
    for (deltas, betas) in [(x_only(p, q), &fq), (x_only(q, p), &fp)] {
        for delta in &deltas {
            for (beta, k) in betas.iter().filter(|(beta, _)| beta > delta) {
                if clause4(ladders, types, &union.f, delta, beta, *k)?.is_some() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Chains [`extend_into_domain`] over every limit of the universe, checking
/// the condition after each step.
pub fn antibuild(start: &PosetCondition, ladders: &LadderSystem, types: &TypeSequence) -> Result<PosetCondition, GuessError> {
    let mut p = start.clone();
    for alpha in ladders.universe().limits() {
        p = extend_into_domain(&p, &alpha, ladders, types)?;
        debug_assert!(validate_condition(&p, ladders, types)?.is_ok());
    }
    Ok(p)
}

/// A random valid condition: a few random points in `x`, then random limits
/// added to `f` either by [`extend_into_domain`] or with a random value,
/// keeping each addition only if the result still validates.
pub fn random_condition(ladders: &LadderSystem, types: &TypeSequence, seed: u64, size: usize) -> Result<PosetCondition, GuessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = ladders.universe();
    let span = 2 * ladders.width() as u64;
    let mut p = PosetCondition::default();
    for _ in 0..rng.gen_range(0..=size.min(3)) {
        let candidate = PosetCondition {
            x: p.x.iter().cloned().chain([Ordinal::omega_mul_plus(rng.gen_range(0..u.m()), rng.gen_range(0..span))]).collect(),
            f: p.f.clone(),
        };
        if validate_condition(&candidate, ladders, types)?.is_ok() {
            p = candidate;
        }
    }
    for _ in 0..size {
        let alpha = u.limits().choose(&mut rng).expect("at least one limit");
        let candidate = if rng.gen_bool(0.5) {
            match extend_into_domain(&p, &alpha, ladders, types) {
                Ok(q) => q,
                Err(GuessError::NoAdmissibleK { .. }) => continue,
                Err(e) => return Err(e),
            }
        } else {
            let mut q = p.clone();
            q.f.insert(alpha, rng.gen_range(0..types.len()));
            q
        };
        if validate_condition(&candidate, ladders, types)?.is_ok() {
            p = candidate;
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Universe;
    use crate::types::specker_type;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> Vec<Ordinal> {
        items.iter().map(|s| o(s)).collect()
    }

    #[test]
    fn injective_coloring_defeats_guessing() {
        let u = Universe::new(12, 6).unwrap();
        let ladders = LadderSystem::seeded(&u, 0);
        let types = TypeSequence::constant("01".parse().unwrap(), 12);
        let f = |a: &Ordinal| a.as_omega_linear().unwrap().0 as usize;
        assert_eq!(check_guessing(&ladders, &types, &f), Ok(None));
    }

    #[test]
    fn canonical_ladders_width_one() {
        let types = TypeSequence::constant("01".parse().unwrap(), 1);
        let f = |_: &Ordinal| 0;
        let u = Universe::new(3, 4).unwrap();
        let ladders = LadderSystem::canonical(&u);
        let w = check_guessing(&ladders, &types, &f).unwrap().unwrap();
        assert_eq!((w.alpha.clone(), w.beta.clone()), (o("w"), o("w*2")));
        assert!(verify_witness(&ladders, &types, &f, &w));
        let u = Universe::new(2, 4).unwrap();
        assert_eq!(check_guessing(&LadderSystem::canonical(&u), &types, &f), Ok(None));
    }

    #[test]
    fn separated_prefixes_are_not_a_witness() {
        let u = Universe::new(8, 4).unwrap();
        let family = vec![set(&["0", "1", "2"]), set(&["3", "4", "5"])];
        let ladders = LadderSystem::rich(&u, &family).unwrap();
        assert_eq!(ladders.c_prefix(&o("w"), 3).unwrap(), &set(&["0", "1", "2"])[..]);
        let types = TypeSequence::constant(specker_type(3, 1).unwrap(), 1);
        let f = |_: &Ordinal| 0;
        assert_eq!(check_guessing(&ladders, &types, &f), Ok(None));
    }

    fn strong_setup() -> (LadderSystem, TypeSequence) {
        let u = Universe::new(32, 8).unwrap();
        let family = vec![
            set(&["0", "1", "3", "w*29+1"]),
            set(&["0", "1", "3", "w*28+1"]),
            set(&["0", "1", "3", "w*27+1"]),
            set(&["2", "4", "5", "w*30"]),
        ];
        let ladders = LadderSystem::rich(&u, &family).unwrap();
        (ladders, TypeSequence::constant(specker_type(3, 1).unwrap(), 1))
    }

    #[test]
    fn strong_guessing_on_rich_ladders() {
        let (ladders, types) = strong_setup();
        let f = |_: &Ordinal| 0;
        let w = check_strong_guessing(&ladders, &types, &f, 3).unwrap().unwrap();
        assert_eq!(w.beta, o("w*31"));
        assert_eq!(w.witnesses, set(&["w*30", "w*29", "w*28"]));
        assert_eq!(w.thresholds, vec![Some(o("w*29")), Some(o("w*28")), Some(o("w*27"))]);
        assert_eq!(check_strong_guessing(&ladders, &types, &f, 4), Ok(None));
        let m0 = check_strong_guessing(&ladders, &types, &f, 0).unwrap().unwrap();
        assert!(m0.witnesses.is_empty());
        let m1 = check_strong_guessing(&ladders, &types, &f, 1).unwrap();
        assert!(m1.is_some() && check_guessing(&ladders, &types, &f).unwrap().is_some());
    }

    #[test]
    fn empty_condition_is_valid() {
        let (ladders, types) = strong_setup();
        assert!(validate_condition(&PosetCondition::default(), &ladders, &types).unwrap().is_ok());
    }

    #[test]
    fn clause_three_violation() {
        let (ladders, types) = strong_setup();
        let p = PosetCondition::new([], [(o("w*30"), 0), (o("w*31"), 0)]);
        let report = validate_condition(&p, &ladders, &types).unwrap();
        assert!(report.violates(3));
        assert!(!compatible(
            &PosetCondition::new([], [(o("w*30"), 0)]),
            &PosetCondition::new([], [(o("w*31"), 0)]),
            &ladders,
            &types
        )
        .unwrap());
    }

    #[test]
    fn clause_four_violation_and_partner() {
        let (ladders, _) = strong_setup();
        // t^3_1 has depth 1, so d_k <= |C_beta ∩ delta| + 1 always
        let types = TypeSequence::constant(specker_type(3, 1).unwrap(), 2);
        let p = PosetCondition::new([o("w*5")], [(o("w*9"), 0)]);
        let report = validate_condition(&p, &ladders, &types).unwrap();
        assert!(report.violates(4));
        // w*29 and w*30 share C[3] = {0, 1, 3}; w*29 <= delta is a partner
        let q = PosetCondition::new([o("w*29")], [(o("w*29"), 0), (o("w*30"), 0)]);
        assert!(validate_condition(&q, &ladders, &types).unwrap().is_ok());
    }

    #[test]
    fn clauses_one_and_two() {
        let (ladders, types) = strong_setup();
        let p = PosetCondition::new([o("w*40")], [(o("w*3+1"), 0)]);
        let report = validate_condition(&p, &ladders, &types).unwrap();
        assert!(report.violates(1) && report.violates(2));
    }

    #[test]
    fn conflicting_maps_are_incompatible() {
        let (ladders, types) = strong_setup();
        let p = PosetCondition::new([], [(o("w*4"), 0)]);
        let q = PosetCondition::new([], [(o("w*4"), 1)]);
        assert!(!compatible(&p, &q, &ladders, &types).unwrap());
        assert!(compatible(&p, &p, &ladders, &types).unwrap());
    }

    fn deep_types() -> TypeSequence {
        TypeSequence::new((0..40).map(|k| specker_type(7, 1 + k % 3).unwrap()).collect())
    }

    #[test]
    fn extension_from_empty() {
        let u = Universe::new(16, 8).unwrap();
        let ladders = LadderSystem::seeded(&u, 2);
        let q = extend_into_domain(&PosetCondition::default(), &o("w*3"), &ladders, &deep_types()).unwrap();
        assert_eq!(q.f.get(&o("w*3")), Some(&0));
        assert!(q.extends(&PosetCondition::default()));
        assert_eq!(
            extend_into_domain(&q, &o("w*3+2"), &ladders, &deep_types()),
            Err(GuessError::NotALimit(o("w*3+2")))
        );
    }

    #[test]
    fn antibuild_defeats_guessing() {
        let u = Universe::new(16, 8).unwrap();
        let ladders = LadderSystem::seeded(&u, 2);
        let types = deep_types();
        let start = PosetCondition::new([o("2")], []);
        let total = antibuild(&start, &ladders, &types).unwrap();
        assert_eq!(total.f.len(), u.limit_count());
        assert!(validate_condition(&total, &ladders, &types).unwrap().is_ok());
        let f = |a: &Ordinal| total.f[a];
        assert_eq!(check_guessing(&ladders, &types, &f), Ok(None));
    }

    #[test]
    fn missing_depth_is_reported() {
        let u = Universe::new(8, 4).unwrap();
        let ladders = LadderSystem::seeded(&u, 0);
        let shallow = TypeSequence::constant("0101".parse().unwrap(), 3);
        assert_eq!(
            extend_into_domain(&PosetCondition::default(), &o("w"), &ladders, &shallow),
            Err(GuessError::NoAdmissibleK { required: 2 })
        );
    }

    #[test]
    fn incremental_compatibility_matches_union_oracle() {
        let u = Universe::new(16, 8).unwrap();
        let ladders = LadderSystem::seeded(&u, 4);
        let types = TypeSequence::new((0..6).map(|k| specker_type(4 + k % 3, 1).unwrap()).collect());
        for seed in 0..200 {
            let p = random_condition(&ladders, &types, seed, 6).unwrap();
            let q = random_condition(&ladders, &types, seed + 10_000, 6).unwrap();
            assert!(validate_condition(&p, &ladders, &types).unwrap().is_ok());
            let oracle = match p.union(&q) {
                None => false,
                Some(r) => validate_condition(&r, &ladders, &types).unwrap().is_ok(),
            };
            assert_eq!(compatible(&p, &q, &ladders, &types).unwrap(), oracle, "{p:?} {q:?}");
        }
    }

    #[test]
    fn condition_json_shape() {
        let p = PosetCondition::new([o("w+1")], [(o("w*2"), 3)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"x":["w+1"],"f":{"w*2":3}}"#);
        assert_eq!(serde_json::from_str::<PosetCondition>(&json).unwrap(), p);
    }
}
