use std::collections::BTreeSet;

use nearconf::levi::{Girth, Graph, LeviGraph};
use nearconf::{
    isomorphic, levi, near_config, realize, verify_realization, IncidenceStructure, Matrix3,
    Rational,
};
use proptest::prelude::*;

/// Greedily keeps the candidate lines that preserve linearity.
fn linear_lines(n: usize, candidates: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut covered = BTreeSet::new();
    let mut lines: Vec<Vec<usize>> = Vec::new();
    for c in candidates {
        let l: Vec<usize> = c.into_iter().collect::<BTreeSet<_>>().into_iter().filter(|&p| p < n).collect();
        if l.len() < 2 {
            continue;
        }
        let pairs: Vec<(usize, usize)> =
            l.iter().enumerate().flat_map(|(i, &a)| l[i + 1..].iter().map(move |&b| (a, b))).collect();
        if pairs.iter().any(|p| covered.contains(p)) {
            continue;
        }
        covered.extend(pairs);
        lines.push(l);
    }
    lines
}

fn linear_structure() -> impl Strategy<Value = IncidenceStructure> {
    (3usize..=12)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(0..n, 2..=4), 1..24)))
        .prop_map(|(n, c)| {
            IncidenceStructure::from_index_lines(n, linear_lines(n, c)).expect("greedy lines are linear")
        })
}

/// Adds 2-lines until every point lies on at least two lines, if possible.
fn with_min_degree_two(s: &IncidenceStructure) -> Option<IncidenceStructure> {
    let n = s.point_count();
    let mut lines: Vec<Vec<usize>> = s.lines().to_vec();
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for l in &lines {
        for (i, &a) in l.iter().enumerate() {
            for &b in &l[i + 1..] {
                covered.insert((a, b));
            }
        }
    }
    let mut degree: Vec<usize> = (0..n).map(|p| s.degree(p)).collect();
    for p in 0..n {
        while degree[p] < 2 {
            let q = (0..n).find(|&q| q != p && !covered.contains(&(p.min(q), p.max(q))))?;
            covered.insert((p.min(q), p.max(q)));
            lines.push(vec![p.min(q), p.max(q)]);
            degree[p] += 1;
            degree[q] += 1;
        }
    }
    IncidenceStructure::from_index_lines(n, lines).ok()
}

fn naive_bridges(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let g = Graph::from_edges(n, edges);
    let mut out: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| {
            let mut h = g.clone();
            h.remove_edge(u, v);
            let mut seen = vec![false; n];
            let mut stack = vec![u];
            seen[u] = true;
            while let Some(x) = stack.pop() {
                for &y in h.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            !seen[v]
        })
        .collect();
    out.sort_unstable();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn linear_structures_have_levi_girth_at_least_six(s in linear_structure()) {
        match levi(&s).girth() {
            Girth::Finite(g) => prop_assert!(g >= 6, "girth {}", g),
            Girth::Infinite => {}
        }
    }

    #[test]
    fn a_repeated_pair_gives_girth_four(s in linear_structure()) {
        prop_assume!(s.line_count() > 0);
        let mut lines = s.lines().to_vec();
        let first = lines[0].clone();
        lines.push(vec![first[0], first[1]]);
        prop_assert_eq!(LeviGraph::from_raw(s.point_count(), &lines).girth(), Girth::Finite(4));
    }

    #[test]
    fn bridges_match_removal_oracle(
        (n, edges) in (2usize..=50).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..80)))
    ) {
        let g = Graph::from_edges(n, &edges);
        prop_assert_eq!(g.bridges(), naive_bridges(n, &edges));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dual_is_an_involution(s in linear_structure()) {
        let s = with_min_degree_two(&s);
        prop_assume!(s.is_some());
        let s = s.unwrap();
        let d = s.dual().unwrap();
        prop_assert_eq!(d.signature(), s.signature().swapped());
        let dd = d.dual().unwrap();
        prop_assert!(isomorphic(&dd, &s).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projective_images_still_verify(
        entries in prop::collection::vec(-9i64..=9, 9),
        n in 9usize..=13,
    ) {
        let q = |i: usize| Rational::from_integer(entries[i].into());
        let m = Matrix3([[q(0), q(1), q(2)], [q(3), q(4), q(5)], [q(6), q(7), q(8)]]);
        prop_assume!(m.is_invertible());
        let s = near_config(n).unwrap();
        let r = realize(&s, 0).unwrap();
        let image = r.transformed(&m).unwrap();
        prop_assert!(verify_realization(&s, &image).unwrap().is_clean());
    }

    #[test]
    fn realize_is_deterministic_per_seed(seed in any::<u64>(), n in 9usize..=14) {
        let s = near_config(n).unwrap();
        prop_assert_eq!(realize(&s, seed).unwrap(), realize(&s, seed).unwrap());
    }
}
