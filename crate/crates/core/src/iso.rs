//! Isomorphism of incidence structures.
//!
//! Works on the Levi graph with points and lines kept in separate colour
//! classes. Both graphs are refined together so that colour names mean the
//! same thing on each side; a branch dies as soon as the colour histograms
//! disagree. Backtracking individualises one vertex of the first smallest
//! non-trivial cell at a time.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use crate::structure::IncidenceStructure;

/// Point and line bijections from one structure onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    /// `points[p]` is the image of point `p`.
    pub points: Vec<usize>,
    /// `lines[l]` is the image of line `l`.
    pub lines: Vec<usize>,
}

impl Isomorphism {
    /// Checks that the maps are bijections carrying incidences onto incidences.
    pub fn is_valid(&self, a: &IncidenceStructure, b: &IncidenceStructure) -> bool {
        if self.points.len() != a.point_count()
            || self.lines.len() != a.line_count()
            || a.point_count() != b.point_count()
            || a.line_count() != b.line_count()
        {
            return false;
        }
        let bijective = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        bijective(&self.points, b.point_count())
            && bijective(&self.lines, b.line_count())
            && (0..a.line_count()).all(|l| {
                let mut img: Vec<usize> = a.line(l).iter().map(|&p| self.points[p]).collect();
                img.sort_unstable();
                img == b.line(self.lines[l])
            })
    }
}

/// Levi graph adjacency: points `0..n`, lines `n..n+m`.
pub(crate) fn levi_adjacency(s: &IncidenceStructure) -> Vec<Vec<usize>> {
    let n = s.point_count();
    let mut adj = vec![Vec::new(); n + s.line_count()];
    for (l, pts) in s.lines().iter().enumerate() {
        for &p in pts {
            adj[p].push(n + l);
            adj[n + l].push(p);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

fn initial_colours(s: &IncidenceStructure) -> Vec<u32> {
    let n = s.point_count();
    let adj = levi_adjacency(s);
    (0..adj.len())
        .map(|v| {
            let kind = u32::from(v >= n);
            // Kind is the high bit so points and lines never share a colour.
            (kind << 31) | adj[v].len() as u32
        })
        .collect()
}

type RefineKey = (u32, Vec<u32>);

/// Refines both colourings to their coarsest common equitable partition.
/// Returns `false` as soon as the colour histograms differ.
fn refine(adj: [&[Vec<usize>]; 2], colours: &mut [Vec<u32>; 2]) -> bool {
    if !same_histogram(colours) {
        return false;
    }
    let mut classes = distinct(&colours[0]);
    loop {
        let keys: [Vec<RefineKey>; 2] = [0, 1].map(|g| {
            (0..adj[g].len())
                .map(|v| {
                    let mut nb: Vec<u32> = adj[g][v].iter().map(|&u| colours[g][u]).collect();
                    nb.sort_unstable();
                    (colours[g][v], nb)
                })
                .collect()
        });
        let mut ids: BTreeMap<&RefineKey, u32> = BTreeMap::new();
        for k in keys[0].iter().chain(keys[1].iter()) {
            ids.insert(k, 0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i as u32;
        }
        for g in 0..2 {
            colours[g] = keys[g].iter().map(|k| ids[k]).collect();
        }
        if !same_histogram(colours) {
            return false;
        }
        let now = distinct(&colours[0]);
        if now == classes {
            return true;
        }
        classes = now;
    }
}

fn distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn same_histogram(colours: &[Vec<u32>; 2]) -> bool {
    let hist = |c: &[u32]| {
        let mut v = c.to_vec();
        v.sort_unstable();
        v
    };
    hist(&colours[0]) == hist(&colours[1])
}

fn search(adj: [&[Vec<usize>]; 2], mut colours: [Vec<u32>; 2]) -> Option<Vec<usize>> {
    if !refine(adj, &mut colours) {
        return None;
    }
    let mut cells: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &colours[0] {
        *cells.entry(c).or_default() += 1;
    }
    let target = cells
        .iter()
        .filter(|(_, &size)| size > 1)
        .min_by_key(|(&c, &size)| (size, c))
        .map(|(&c, _)| c);
    let Some(target) = target else {
        let mut image = vec![usize::MAX; colours[0].len()];
        let mut by_colour = BTreeMap::new();
        for (w, &c) in colours[1].iter().enumerate() {
            by_colour.insert(c, w);
        }
        for (v, c) in colours[0].iter().enumerate() {
            image[v] = by_colour[c];
        }
        let preserves = (0..adj[0].len()).all(|v| {
            let mut nb: Vec<usize> = adj[0][v].iter().map(|&u| image[u]).collect();
            nb.sort_unstable();
            nb == adj[1][image[v]]
        });
        return preserves.then_some(image);
    };
    let fresh = cells.keys().next_back().map_or(0, |&c| c + 1);
    let v = colours[0].iter().position(|&c| c == target)?;
    for w in (0..colours[1].len()).filter(|&w| colours[1][w] == target) {
        let mut next = colours.clone();
        next[0][v] = fresh;
        next[1][w] = fresh;
        if let Some(m) = search(adj, next) {
            return Some(m);
        }
    }
    None
}

/// Finds an isomorphism from `a` onto `b`, if one exists.
///
/// Deterministic for fixed inputs.
pub fn isomorphic(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Isomorphism> {
    if a.point_count() != b.point_count()
        || a.line_count() != b.line_count()
        || a.signature() != b.signature()
    {
        return None;
    }
    let (adj_a, adj_b) = (levi_adjacency(a), levi_adjacency(b));
    let image = search([&adj_a, &adj_b], [initial_colours(a), initial_colours(b)])?;
    let n = a.point_count();
    let iso = Isomorphism {
        points: image[..n].to_vec(),
        lines: image[n..].iter().map(|&w| w - n).collect(),
    };
    debug_assert!(iso.is_valid(a, b));
    Some(iso)
}

/// Isomorphism-invariant fingerprint: equal for isomorphic structures and
/// usually different otherwise. Used to bucket candidates before calling
/// [`isomorphic`].
pub fn invariant(s: &IncidenceStructure) -> u64 {
    let adj = levi_adjacency(s);
    let mut colours = initial_colours(s);
    let mut h = DefaultHasher::new();
    (s.point_count(), s.line_count()).hash(&mut h);
    loop {
        let keys: Vec<RefineKey> = (0..adj.len())
            .map(|v| {
                let mut nb: Vec<u32> = adj[v].iter().map(|&u| colours[u]).collect();
                nb.sort_unstable();
                (colours[v], nb)
            })
            .collect();
        let mut hist: BTreeMap<&RefineKey, usize> = BTreeMap::new();
        for k in &keys {
            *hist.entry(k).or_default() += 1;
        }
        hist.iter().for_each(|e| e.hash(&mut h));
        let ids: BTreeMap<&RefineKey, u32> =
            hist.keys().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let before = distinct(&colours);
        colours = keys.iter().map(|k| ids[k]).collect();
        if distinct(&colours) == before {
            return h.finish();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::tests::fano;
    use crate::structure::validate;

    #[test]
    fn fano_relabelled_is_isomorphic() {
        let f = fano();
        let g = f.relabel(|p| format!("x{}", (p.parse::<usize>().unwrap() * 3) % 7)).unwrap();
        let iso = isomorphic(&f, &g).expect("isomorphic");
        assert!(iso.is_valid(&f, &g));
        assert_eq!(invariant(&f), invariant(&g));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let f = fano();
        let keep = (0..6).collect();
        assert!(isomorphic(&f, &f.restrict_to(&keep)).is_none());
    }

    #[test]
    fn same_signature_different_structure() {
        // A 6-cycle of points with lines of size 2 versus two triangles.
        let hexagon = validate(
            ["0", "1", "2", "3", "4", "5"],
            [["0", "1"], ["1", "2"], ["2", "3"], ["3", "4"], ["4", "5"], ["0", "5"]],
        )
        .unwrap();
        let triangles = validate(
            ["0", "1", "2", "3", "4", "5"],
            [["0", "1"], ["1", "2"], ["0", "2"], ["3", "4"], ["4", "5"], ["3", "5"]],
        )
        .unwrap();
        assert_eq!(hexagon.signature(), triangles.signature());
        assert!(isomorphic(&hexagon, &triangles).is_none());
    }

    #[test]
    fn automorphism_of_regular_structure_is_found() {
        let f = fano();
        let iso = isomorphic(&f, &f).unwrap();
        assert!(iso.is_valid(&f, &f));
    }
}
