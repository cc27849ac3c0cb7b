//! Randomized invariants, each checked against an independent oracle.

use std::cmp::Ordering;

use hm_forge::coloring::{exact_chromatic, greedy_upper, is_proper, DEFAULT_BUDGET};
use hm_forge::graph::Graph;
use hm_forge::graphprops::{find_special_cycle, is_cycle, shortest_odd_cycle_upto};
use hm_forge::ordinal::{compare, format_ordinal, parse_ordinal, Ordinal};
use hm_forge::types::{realize, type_of, DisjointType};
use proptest::prelude::*;

fn ordinal() -> impl Strategy<Value = Ordinal> {
    // exponents below 6, listed decreasingly
    prop::collection::btree_map(0u32..6, 1u64..50, 0..4).prop_map(|m| {
        let terms = m.into_iter().rev().collect();
        Ordinal::from_terms(terms).expect("valid normal form")
    })
}

/// Coefficients of ω^5, …, ω^0; ordinals below ω^6 compare like these.
fn coefficients(a: &Ordinal) -> [u64; 6] {
    let mut out = [0; 6];
    for &(e, c) in a.terms() {
        out[5 - e as usize] = c;
    }
    out
}

fn graph(max_n: usize, density: f64) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        prop::collection::vec(prop::bool::weighted(density), pairs.len())
            .prop_map(move |keep| Graph::from_edges(n, pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&e, _)| e)))
    })
}

fn disjoint_type() -> impl Strategy<Value = DisjointType> {
    (1usize..6)
        .prop_flat_map(|n| prop::sample::subsequence((0..2 * n).collect::<Vec<_>>(), n).prop_map(move |ones| (n, ones)))
        .prop_map(|(n, ones)| DisjointType::from_bits((0..2 * n).map(|i| ones.contains(&i)).collect()).unwrap())
}

/// Smallest odd `ℓ ≤ n` with `trace(A^ℓ) > 0`: a shortest closed odd walk is
/// a cycle.
fn odd_girth_by_trace(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let a: Vec<Vec<u128>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v) as u128).collect()).collect();
    let mul = |x: &Vec<Vec<u128>>, y: &Vec<Vec<u128>>| -> Vec<Vec<u128>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
    };
    let mut power = a.clone();
    for len in 1..=n {
        if len % 2 == 1 && len >= 3 && (0..n).any(|i| power[i][i] > 0) {
            return Some(len);
        }
        power = mul(&power, &a);
    }
    None
}

/// Exactly one cyclic local maximum, hence one descending and one ascending run.
fn unimodal(cycle: &[usize]) -> bool {
    let n = cycle.len();
    (0..n).filter(|&i| cycle[i] > cycle[(i + n - 1) % n] && cycle[i] > cycle[(i + 1) % n]).count() == 1
}

/// Whether some simple cycle satisfies `pred`; each cycle is walked from
/// its least vertex.
fn any_simple_cycle(g: &Graph, pred: &dyn Fn(&[usize]) -> bool) -> bool {
    fn dfs(g: &Graph, start: usize, path: &mut Vec<usize>, on: &mut [bool], pred: &dyn Fn(&[usize]) -> bool) -> bool {
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == start && path.len() >= 3 && pred(path) {
                return true;
            }
            if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                if dfs(g, start, path, on, pred) {
                    return true;
                }
                path.pop();
                on[w] = false;
            }
        }
        false
    }
    let n = g.vertex_count();
    (0..n).any(|s| {
        let mut on = vec![false; n];
        on[s] = true;
        dfs(g, s, &mut vec![s], &mut on, pred)
    })
}

/// χ by dynamic programming over vertex subsets.
fn chromatic_by_subsets(g: &Graph) -> usize {
    let n = g.vertex_count();
    let full = (1usize << n) - 1;
    let independent: Vec<bool> = (0..=full)
        .map(|m| g.edges().all(|(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
        .collect();
    let mut chi = vec![usize::MAX; full + 1];
    chi[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // subsets of `rest`, each joined with the lowest vertex
        let mut sub = rest;
        loop {
            let part = sub | low;
            if independent[part] {
                chi[mask] = chi[mask].min(chi[mask ^ part] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    chi[full]
}

fn depth_by_definition(a: &[u64], b: &[u64]) -> usize {
    let n = a.len();
    (0..n).find(|&k| a[n - 1] < b[k] || b[n - 1] < a[k]).unwrap()
}

proptest! {
    #[test]
    fn ordinal_spelling_roundtrips(a in ordinal()) {
        let text = format_ordinal(&a);
        prop_assert_eq!(parse_ordinal(&text).unwrap(), a);
    }

    #[test]
    fn compare_matches_coefficients(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(compare(&a, &b), coefficients(&a).cmp(&coefficients(&b)));
        prop_assert_eq!(compare(&a, &b), a.cmp(&b));
        if compare(&a, &b) != Ordering::Greater && compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(compare(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn odd_girth_matches_trace(g in graph(12, 0.25)) {
        let found = shortest_odd_cycle_upto(&g, g.vertex_count());
        prop_assert_eq!(found.as_ref().map(|c| c.length), odd_girth_by_trace(&g));
        if let Some(c) = found {
            prop_assert!(is_cycle(&g, &c.cycle));
            prop_assert_eq!(c.cycle.len(), c.length);
        }
    }

    #[test]
    fn special_cycles_match_enumeration(g in graph(10, 0.3)) {
        let found = find_special_cycle(&g);
        prop_assert_eq!(found.is_some(), any_simple_cycle(&g, &unimodal));
        if let Some(c) = found {
            prop_assert!(is_cycle(&g, &c));
            prop_assert!(unimodal(&c));
        }
    }

    #[test]
    fn exact_chromatic_matches_subset_dp(g in graph(8, 0.5)) {
        let sol = exact_chromatic(&g, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(sol.chi, chromatic_by_subsets(&g));
        prop_assert!(is_proper(&g, &sol.coloring));
        let order: Vec<usize> = (0..g.vertex_count()).collect();
        prop_assert!(greedy_upper(&g, &order).0 >= sol.chi);
    }

    #[test]
    fn type_of_and_opposite(t in disjoint_type()) {
        let (a, b) = realize(&t);
        prop_assert_eq!(type_of(&a, &b).unwrap(), t.clone());
        prop_assert_eq!(type_of(&b, &a).unwrap(), t.opposite());
        prop_assert_eq!(t.opposite().opposite(), t.clone());
        prop_assert_eq!(t.opposite().depth(), t.depth());
        prop_assert_eq!(t.depth(), depth_by_definition(&a, &b));
    }

    #[test]
    fn depth_of_spread_sets(points in prop::collection::btree_set(0u64..1000, 2..=12)) {
        let points: Vec<u64> = points.into_iter().collect();
        let n = points.len() / 2;
        // a pseudo-random split; unequal halves are discarded
        let (a, b): (Vec<(usize, u64)>, Vec<(usize, u64)>) = points[..2 * n].iter().copied().enumerate().partition(|(i, p)| (i + *p as usize).is_multiple_of(2));
        prop_assume!(a.len() == b.len());
        let a: Vec<u64> = a.into_iter().map(|x| x.1).collect();
        let b: Vec<u64> = b.into_iter().map(|x| x.1).collect();
        prop_assert_eq!(type_of(&a, &b).unwrap().depth(), depth_by_definition(&a, &b));
    }

    #[test]
    fn concat_is_associative(x in disjoint_type(), y in disjoint_type(), z in disjoint_type()) {
        prop_assert_eq!(x.concat(&y).concat(&z), x.concat(&y.concat(&z)));
        prop_assert_eq!(x.concat(&y).width(), x.width() + y.width());
    }
}
