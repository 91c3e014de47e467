//! Exhaustive search for structures with a given signature.
//!
//! Points get their target degrees in decreasing order. Lines are added in
//! lexicographic order: the next line always starts at the smallest point
//! that still needs lines, so every labelled structure is produced at most
//! once. Untouched points of equal degree are interchangeable, and a new
//! line may only use the lowest ones available. Survivors are reduced to one
//! representative per isomorphism class.

use std::collections::HashMap;

use thiserror::Error;

use crate::iso::{invariant, isomorphic};
use crate::signature::Signature;
use crate::structure::IncidenceStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
    /// Allow more than [`SearchOptions::GUARD`] points.
    pub force: bool,
    /// Skip labellings that only permute untouched points. Turning this off
    /// gives the same classes, more slowly.
    pub symmetry_breaking: bool,
}

impl SearchOptions {
    pub const GUARD: usize = 10;
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 500_000_000, force: false, symmetry_breaking: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search on {n} points exceeds the guard of {max}; pass force to run it anyway")]
    TooLarge { n: usize, max: usize },
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
}

/// All structures on `n` points with signature `target`, one per
/// isomorphism class, in the order found. An empty result is a proof that
/// none exists.
pub fn search_structures(
    n: usize,
    target: &Signature,
    options: &SearchOptions,
) -> Result<Vec<IncidenceStructure>, SearchError> {
    if n > SearchOptions::GUARD && !options.force {
        return Err(SearchError::TooLarge { n, max: SearchOptions::GUARD });
    }
    if target.point_count() != n
        || !target.is_balanced()
        || target.line_sizes.keys().any(|&k| k < 2)
    {
        return Ok(Vec::new());
    }
    let mut degrees: Vec<usize> = target
        .point_degrees
        .iter()
        .flat_map(|(&d, &c)| std::iter::repeat_n(d, c))
        .collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let sizes: Vec<(usize, usize)> = target.line_sizes.iter().map(|(&k, &c)| (k, c)).collect();

    let mut search = Search {
        n,
        target: degrees.clone(),
        remaining: degrees,
        covered: vec![vec![false; n]; n],
        size_left: sizes.iter().map(|&(_, c)| c).collect(),
        sizes: sizes.iter().map(|&(k, _)| k).collect(),
        lines: Vec::new(),
        nodes: 0,
        options: options.clone(),
        found: Vec::new(),
    };
    search.extend()?;

    let mut classes: Vec<IncidenceStructure> = Vec::new();
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    for lines in search.found {
        let s = IncidenceStructure::from_index_lines(n, lines)
            .expect("search only builds linear structures");
        let bucket = buckets.entry(invariant(&s)).or_default();
        if bucket.iter().all(|&i| isomorphic(&classes[i], &s).is_none()) {
            bucket.push(classes.len());
            classes.push(s);
        }
    }
    Ok(classes)
}

struct Search {
    n: usize,
    target: Vec<usize>,
    remaining: Vec<usize>,
    covered: Vec<Vec<bool>>,
    sizes: Vec<usize>,
    size_left: Vec<usize>,
    lines: Vec<Vec<usize>>,
    nodes: u64,
    options: SearchOptions,
    found: Vec<Vec<Vec<usize>>>,
}

impl Search {
    fn untouched(&self, c: usize) -> bool {
        self.remaining[c] > 0 && self.remaining[c] == self.target[c]
    }

    fn extend(&mut self) -> Result<(), SearchError> {
        self.nodes += 1;
        if self.nodes > self.options.budget {
            return Err(SearchError::SearchBudgetExceeded { budget: self.options.budget });
        }
        let Some(p) = (0..self.n).find(|&q| self.remaining[q] > 0) else {
            if self.size_left.iter().all(|&c| c == 0) {
                self.found.push(self.lines.clone());
            }
            return Ok(());
        };
        if self.size_left.iter().sum::<usize>() < self.remaining[p] {
            return Ok(());
        }
        // Later lines through p share only p with earlier ones, so their
        // second point, and hence all their other points, lie above `bound`.
        let bound = match self.lines.last() {
            Some(l) if l[0] == p => l[1],
            _ => p,
        };
        for si in 0..self.sizes.len() {
            if self.size_left[si] == 0 {
                continue;
            }
            let k = self.sizes[si];
            self.size_left[si] -= 1;
            let mut chosen = vec![p];
            let mut skipped = Vec::new();
            let r = self.choose(bound + 1, k - 1, &mut chosen, &mut skipped);
            self.size_left[si] += 1;
            r?;
        }
        Ok(())
    }

    /// Picks `need` more points from `start..` for the line in `chosen`.
    /// `skipped` lists target degrees of which an untouched point was passed
    /// over; no higher untouched point of that degree may be used.
    fn choose(
        &mut self,
        start: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        skipped: &mut Vec<usize>,
    ) -> Result<(), SearchError> {
        if need == 0 {
            return self.with_line(chosen);
        }
        let mark = skipped.len();
        for c in start..self.n {
            if self.n - c < need {
                break;
            }
            let fresh = self.options.symmetry_breaking && self.untouched(c);
            let blocked = fresh && skipped.contains(&self.target[c]);
            let fits = self.remaining[c] > 0 && chosen.iter().all(|&x| !self.covered[x][c]);
            if fits && !blocked {
                chosen.push(c);
                let r = self.choose(c + 1, need - 1, chosen, skipped);
                chosen.pop();
                r?;
            }
            if fresh && !blocked {
                skipped.push(self.target[c]);
            }
        }
        skipped.truncate(mark);
        Ok(())
    }

    fn with_line(&mut self, line: &[usize]) -> Result<(), SearchError> {
        for (i, &a) in line.iter().enumerate() {
            self.remaining[a] -= 1;
            for &b in &line[i + 1..] {
                self.covered[a][b] = true;
                self.covered[b][a] = true;
            }
        }
        self.lines.push(line.to_vec());
        let r = self.extend();
        self.lines.pop();
        for (i, &a) in line.iter().enumerate() {
            self.remaining[a] += 1;
            for &b in &line[i + 1..] {
                self.covered[a][b] = false;
                self.covered[b][a] = false;
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cyclic_config;

    #[test]
    fn unique_seven_three() {
        let sig = Signature::configuration(7, 3, 7, 3);
        let found = search_structures(7, &sig, &SearchOptions::default()).unwrap();
        assert_eq!(found.len(), 1);
        assert!(isomorphic(&found[0], &cyclic_config(7).unwrap()).is_some());
    }

    #[test]
    fn unique_eight_three() {
        let sig = Signature::configuration(8, 3, 8, 3);
        let found = search_structures(8, &sig, &SearchOptions::default()).unwrap();
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn symmetry_breaking_keeps_every_class() {
        // Mixed degrees exercise the per-degree rule.
        let sigs = [
            Signature::configuration(7, 3, 7, 3),
            Signature::from_terms([(3, 6)], [(2, 3), (3, 4)]),
            Signature::configuration(6, 2, 4, 3),
            Signature::from_terms([(2, 3), (3, 4)], [(2, 3), (3, 4)]),
        ];
        for sig in &sigs {
            let n = sig.point_count();
            let with = search_structures(n, sig, &SearchOptions::default()).unwrap();
            let without = search_structures(
                n,
                sig,
                &SearchOptions { symmetry_breaking: false, ..SearchOptions::default() },
            )
            .unwrap();
            assert_eq!(with.len(), without.len(), "{sig}");
            for s in &with {
                assert_eq!(s.signature(), *sig);
            }
        }
    }

    #[test]
    fn guard_and_budget() {
        let sig = Signature::near(11);
        assert_eq!(
            search_structures(11, &sig, &SearchOptions::default()),
            Err(SearchError::TooLarge { n: 11, max: 10 })
        );
        let tiny = SearchOptions { budget: 10, ..SearchOptions::default() };
        assert_eq!(
            search_structures(9, &Signature::near(9), &tiny),
            Err(SearchError::SearchBudgetExceeded { budget: 10 })
        );
    }

    #[test]
    fn impossible_signatures_give_nothing() {
        let sig = Signature::configuration(6, 3, 6, 3);
        assert!(search_structures(6, &sig, &SearchOptions::default()).unwrap().is_empty());
        assert!(search_structures(5, &sig, &SearchOptions::default()).unwrap().is_empty());
    }
}
