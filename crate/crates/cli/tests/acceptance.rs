//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use nearconf::levi::{Girth, Graph, LeviGraph};
use nearconf::{
    catalog, compound_realization, cyclic_config, decide_realizability, isomorphic, levi,
    near_config, non_geometric_compound, realize, search_structures, steinitz_realize,
    verify_realization, IncidenceStructure, RealizabilityStatus, SearchOptions, Signature,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn existence() -> Result<(), String> {
    for n in 9..=50 {
        let s = near_config(n).map_err(|e| e.to_string())?;
        if !s.is_near_config() {
            return Err(format!("near_config({n}) is not a near-configuration"));
        }
    }
    Ok(())
}

fn nonexistence() -> Result<(), String> {
    let options = SearchOptions::default();
    let eight = search_structures(8, &Signature::near(8), &options).map_err(|e| e.to_string())?;
    if !eight.is_empty() {
        return Err(format!("found {} structures on 8 points", eight.len()));
    }
    let plain = SearchOptions { symmetry_breaking: false, ..SearchOptions::default() };
    let eight = search_structures(8, &Signature::near(8), &plain).map_err(|e| e.to_string())?;
    if !eight.is_empty() {
        return Err("unpruned search found structures on 8 points".into());
    }
    let nine = search_structures(9, &Signature::near(9), &options).map_err(|e| e.to_string())?;
    let n9 = near_config(9).unwrap();
    if !nine.iter().any(|s| isomorphic(s, &n9).is_some()) {
        return Err(format!("{} classes on 9 points, none matching near_config(9)", nine.len()));
    }
    Ok(())
}

fn geometric_existence() -> Result<(), String> {
    for n in 9..=20 {
        let s = near_config(n).unwrap();
        let start = Instant::now();
        let r = realize(&s, 0).map_err(|e| format!("n = {n}: {e}"))?;
        let report = verify_realization(&s, &r).map_err(|e| e.to_string())?;
        if !report.missed.is_empty() || !report.unwanted.is_empty() || !report.is_clean() {
            return Err(format!("n = {n}: {report}"));
        }
        if start.elapsed().as_secs() >= 10 {
            return Err(format!("n = {n} took {:?}", start.elapsed()));
        }
    }
    Ok(())
}

fn compound_realizations() -> Result<(), String> {
    let fano = cyclic_config(7).unwrap();
    for (right, n) in [(cyclic_config(7).unwrap(), 14), (cyclic_config(8).unwrap(), 15)] {
        let c = compound_realization(&fano.with_prefix("p"), &right.with_prefix("q"), 0)
            .map_err(|e| format!("n = {n}: {e}"))?;
        if c.structure.point_count() != n || !c.structure.is_near_config() {
            return Err(format!("n = {n}: merged structure is {}", c.structure.signature()));
        }
        let report = verify_realization(&c.structure, &c.realization).map_err(|e| e.to_string())?;
        if !report.is_clean() || c.realization.broken.is_some() {
            return Err(format!("n = {n}: {report}"));
        }
    }
    Ok(())
}

fn non_realizability() -> Result<(), String> {
    let fano = catalog().get("fano").unwrap();
    for n in 14..=16 {
        let start = Instant::now();
        let v = decide_realizability(&non_geometric_compound(n).unwrap(), catalog())
            .map_err(|e| e.to_string())?;
        if v.status != RealizabilityStatus::NotRealizable {
            return Err(format!("n = {n}: {:?}", v.status));
        }
        let w = v.witness.ok_or("no witness")?;
        if isomorphic(&w.component, &fano.structure).is_none() {
            return Err(format!("n = {n}: witness is not the Fano plane"));
        }
        if start.elapsed().as_secs() >= 1 {
            return Err(format!("n = {n} took {:?}", start.elapsed()));
        }
    }
    Ok(())
}

fn steinitz() -> Result<(), String> {
    for m in 7..=12 {
        let c = cyclic_config(m).unwrap();
        let r = steinitz_realize(&c, None, 0).map_err(|e| format!("m = {m}: {e}"))?;
        let report = verify_realization(&c, &r).map_err(|e| e.to_string())?;
        if report.realized != 3 * m - 1 || report.total != 3 * m || !report.is_clean() {
            return Err(format!("m = {m}: {} of {} realized, {report}", report.realized, report.total));
        }
        let (p, l) = r.broken.ok_or("no broken incidence")?;
        if r.points[p].incident(&r.lines[l]) {
            return Err(format!("m = {m}: broken pair is incident"));
        }
    }
    Ok(())
}

/// A random linear structure on up to 12 points whose points all lie on at
/// least two lines.
fn random_structure(rng: &mut ChaCha8Rng) -> Option<IncidenceStructure> {
    let n = rng.gen_range(3..=12);
    let mut covered = BTreeSet::new();
    let mut lines: Vec<Vec<usize>> = Vec::new();
    fn add(l: Vec<usize>, lines: &mut Vec<Vec<usize>>, covered: &mut BTreeSet<(usize, usize)>) -> bool {
        let pairs: Vec<_> = l.iter().enumerate().flat_map(|(i, &a)| l[i + 1..].iter().map(move |&b| (a, b))).collect();
        if pairs.iter().any(|p| covered.contains(p)) {
            return false;
        }
        covered.extend(pairs);
        lines.push(l);
        true
    }
    for _ in 0..rng.gen_range(1..24) {
        let k = rng.gen_range(2..=4.min(n));
        let l: BTreeSet<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        if l.len() >= 2 {
            add(l.into_iter().collect(), &mut lines, &mut covered);
        }
    }
    for p in 0..n {
        let mut degree = lines.iter().filter(|l| l.contains(&p)).count();
        let mut q = 0;
        while degree < 2 {
            if q == n {
                return None;
            }
            if q != p && add(vec![p.min(q), p.max(q)], &mut lines, &mut covered) {
                degree += 1;
            }
            q += 1;
        }
    }
    IncidenceStructure::from_index_lines(n, lines).ok()
}

fn catalog_identities() -> Result<(), String> {
    if isomorphic(&cyclic_config(7).unwrap(), &catalog().get("fano").unwrap().structure).is_none() {
        return Err("cyclic (7_3) is not the Fano plane".into());
    }
    if isomorphic(&cyclic_config(8).unwrap(), &catalog().get("mobius-kantor").unwrap().structure).is_none() {
        return Err("cyclic (8_3) is not Mobius-Kantor".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 100 {
        let Some(s) = random_structure(&mut rng) else { continue };
        let dd = s.dual().and_then(|d| d.dual()).map_err(|e| e.to_string())?;
        if isomorphic(&dd, &s).is_none() {
            return Err(format!("dual(dual(S)) differs from S = {:?}", s.named_lines()));
        }
        checked += 1;
    }
    let d = near_config(9).unwrap().dual().map_err(|e| e.to_string())?;
    if d.signature().to_string() != "(x^2+7x^3+x^4, 9y^3)" {
        return Err(format!("dual of near_config(9) has signature {}", d.signature()));
    }
    Ok(())
}

fn naive_bridges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    g.edges()
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
        .collect()
}

fn graph_oracles() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let n = rng.gen_range(1..=50);
        let m = rng.gen_range(0..=2 * n);
        let edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let g = Graph::from_edges(n, &edges);
        let mut naive = naive_bridges(&g);
        naive.sort_unstable();
        if g.bridges() != naive {
            return Err(format!("bridges disagree on {edges:?}"));
        }
    }
    let mut checked = 0;
    while checked < 200 {
        let Some(s) = random_structure(&mut rng) else { continue };
        if let Girth::Finite(g) = levi(&s).girth() {
            if g < 6 {
                return Err(format!("girth {g} for a linear structure"));
            }
        }
        let mut lines = s.lines().to_vec();
        let pair = vec![lines[0][0], lines[0][1]];
        lines.push(pair);
        if LeviGraph::from_raw(s.point_count(), &lines).girth() != Girth::Finite(4) {
            return Err("a repeated pair did not give girth 4".into());
        }
        checked += 1;
    }
    Ok(())
}

fn run_cli(dir: &Path) -> Vec<Vec<u8>> {
    let bin = env!("CARGO_BIN_EXE_nearconf");
    let run = |args: &[&str]| {
        let status = Command::new(bin).args(args).current_dir(dir).output().expect("binary runs");
        assert!(status.status.success(), "{args:?}: {}", String::from_utf8_lossy(&status.stderr));
    };
    run(&["--seed", "3", "construct", "near", "12", "-o", "s.json"]);
    run(&["--seed", "3", "realize", "s.json", "-o", "r.json", "--svg", "r.svg"]);
    ["s.json", "r.json", "r.svg"].iter().map(|f| std::fs::read(dir.join(f)).unwrap()).collect()
}

fn determinism() -> Result<(), String> {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = run_cli(a.path());
    let second = run_cli(b.path());
    for (name, (x, y)) in ["structure", "realization", "svg"].iter().zip(first.iter().zip(&second)) {
        if x != y {
            return Err(format!("{name} output differs between runs"));
        }
    }
    Ok(())
}

type Check = fn() -> Result<(), String>;

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("near-configurations exist for 9 <= n <= 50", existence),
        ("none on 8 points; near_config(9) found on 9", nonexistence),
        ("near_config(n) realized exactly for 9 <= n <= 20", geometric_existence),
        ("aligned compounds on 14 and 15 points verify", compound_realizations),
        ("Fano compounds on 14..16 points are not realizable", non_realizability),
        ("cyclic (m_3) drawings miss exactly one incidence", steinitz),
        ("catalog identities and dual involution", catalog_identities),
        ("bridge and girth oracles", graph_oracles),
        ("CLI outputs are byte-identical per seed", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS ({name}, {secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
