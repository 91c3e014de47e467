//! Named structures with their known geometric status.
//!
//! Non-geometric entries are the ones with a classical impossibility proof:
//! the Fano plane and the Möbius–Kantor configuration. Geometric entries
//! carry exact coordinates that are checked when the catalog is built.

use std::sync::OnceLock;

use super::cyclic_config;
use crate::iso::{isomorphic, Isomorphism};
use crate::levi::{levi, peel};
use crate::realization::{replay, verify_realization, Realization};
use crate::structure::{validate, IncidenceStructure};
use crate::{ExactCoord, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeometricStatus {
    Geometric,
    NonGeometric,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub structure: IncidenceStructure,
    pub status: GeometricStatus,
    /// Exact coordinates, for geometric entries.
    pub coordinates: Option<Realization>,
    pub description: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// A catalog of the given entries. Panics if any coordinates fail to
    /// verify or a geometric status is inconsistent with them.
    pub fn new(entries: Vec<CatalogEntry>) -> Self {
        for e in &entries {
            if let Some(r) = &e.coordinates {
                assert_eq!(e.status, GeometricStatus::Geometric, "{}: coordinates on a non-geometric entry", e.name);
                let rep = verify_realization(&e.structure, r)
                    .unwrap_or_else(|err| panic!("{}: {err}", e.name));
                assert!(rep.is_clean() && r.broken.is_none(), "{}: {rep}", e.name);
            }
        }
        Catalog { entries }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    /// First entry isomorphic to `s`, with the isomorphism from the entry
    /// onto `s`.
    pub fn lookup(&self, s: &IncidenceStructure) -> Option<(&CatalogEntry, Isomorphism)> {
        let sig = s.signature();
        self.entries
            .iter()
            .filter(|e| e.structure.signature() == sig)
            .find_map(|e| isomorphic(&e.structure, s).map(|iso| (e, iso)))
    }
}

/// The shipped catalog, built and checked on first use.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::new(shipped()))
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn hom(a: i64, b: i64, c: i64) -> ExactCoord {
    ExactCoord::new(q(a, 1), q(b, 1), q(c, 1)).expect("nonzero")
}

fn pt(x: Rational, y: Rational) -> ExactCoord {
    ExactCoord::affine(x, y)
}

fn structure(lines: &[&[&str]]) -> IncidenceStructure {
    let mut points: Vec<&str> = lines.iter().flat_map(|l| l.iter().copied()).collect();
    points.sort_unstable();
    points.dedup();
    validate(points, lines.iter().map(|l| l.to_vec())).expect("catalog structures are valid")
}

/// Geometric entry whose lines are joins of their first two points.
fn drawn(
    name: &str,
    description: &'static str,
    lines: &[&[&str]],
    coords: &[(&str, ExactCoord)],
) -> CatalogEntry {
    let s = structure(lines);
    let mut points = vec![None; s.point_count()];
    for (n, c) in coords {
        points[s.point_index(n).expect("coordinate for a known point")] = Some(c.clone());
    }
    let points: Vec<ExactCoord> =
        points.into_iter().map(|c| c.expect("every point has coordinates")).collect();
    let lines = (0..s.line_count())
        .map(|l| {
            let [a, b] = [s.line(l)[0], s.line(l)[1]];
            points[a].cross(&points[b]).expect("distinct points")
        })
        .collect();
    CatalogEntry {
        name: name.into(),
        structure: s,
        status: GeometricStatus::Geometric,
        coordinates: Some(Realization { points, lines, broken: None }),
        description,
    }
}

fn combinatorial(
    name: &str,
    description: &'static str,
    s: IncidenceStructure,
    status: GeometricStatus,
) -> CatalogEntry {
    CatalogEntry { name: name.into(), structure: s, status, coordinates: None, description }
}

/// A geometric entry whose coordinates come from this crate's own replay.
fn replayed(name: &str, description: &'static str, lines: &[&[&str]]) -> CatalogEntry {
    let s = structure(lines);
    let trace = peel(&levi(&s));
    let r = replay(&trace, 0).expect("catalog structures without cubic pieces replay");
    CatalogEntry {
        name: name.into(),
        structure: s,
        status: GeometricStatus::Geometric,
        coordinates: Some(r),
        description,
    }
}

fn pappus() -> CatalogEntry {
    let a = [pt(q(0, 1), q(0, 1)), pt(q(1, 1), q(0, 1)), pt(q(3, 1), q(0, 1))];
    let b = [pt(q(0, 1), q(1, 1)), pt(q(2, 1), q(1, 1)), pt(q(7, 1), q(1, 1))];
    let meet = |p: &ExactCoord, r: &ExactCoord, s: &ExactCoord, t: &ExactCoord| {
        p.cross(r).unwrap().cross(&s.cross(t).unwrap()).unwrap()
    };
    let c3 = meet(&a[0], &b[1], &a[1], &b[0]);
    let c2 = meet(&a[0], &b[2], &a[2], &b[0]);
    let c1 = meet(&a[1], &b[2], &a[2], &b[1]);
    drawn(
        "pappus",
        "Pappus (9_3) configuration",
        &[
            &["A1", "A2", "A3"],
            &["B1", "B2", "B3"],
            &["A1", "B2", "C3"],
            &["A2", "B1", "C3"],
            &["A1", "B3", "C2"],
            &["A3", "B1", "C2"],
            &["A2", "B3", "C1"],
            &["A3", "B2", "C1"],
            &["C1", "C2", "C3"],
        ],
        &[
            ("A1", a[0].clone()),
            ("A2", a[1].clone()),
            ("A3", a[2].clone()),
            ("B1", b[0].clone()),
            ("B2", b[1].clone()),
            ("B3", b[2].clone()),
            ("C1", c1),
            ("C2", c2),
            ("C3", c3),
        ],
    )
}

fn shipped() -> Vec<CatalogEntry> {
    use GeometricStatus::*;
    let z = |n: i64| q(n, 1);
    vec![
        drawn(
            "quadrangle",
            "complete graph K4 as a (4_3, 6_2) configuration",
            &[&["a", "b"], &["a", "c"], &["a", "d"], &["b", "c"], &["b", "d"], &["c", "d"]],
            &[
                ("a", pt(z(0), z(0))),
                ("b", pt(z(1), z(0))),
                ("c", pt(z(0), z(1))),
                ("d", pt(z(1), z(1))),
            ],
        ),
        combinatorial(
            "fano",
            "Fano plane, the (7_3) configuration; not realizable over the reals",
            cyclic_config(7).expect("m = 7"),
            NonGeometric,
        ),
        combinatorial(
            "mobius-kantor",
            "Möbius–Kantor (8_3) configuration; not realizable over the reals",
            cyclic_config(8).expect("m = 8"),
            NonGeometric,
        ),
        combinatorial(
            "cyclic-9",
            "cyclic (9_3) configuration, translates of {0,1,3} mod 9; status not recorded",
            cyclic_config(9).expect("m = 9"),
            Unknown,
        ),
        pappus(),
        drawn(
            "desargues",
            "Desargues (10_3) configuration",
            &[
                &["O", "A1", "A2"],
                &["O", "B1", "B2"],
                &["O", "C1", "C2"],
                &["A1", "B1", "P"],
                &["A2", "B2", "P"],
                &["A1", "C1", "Q"],
                &["A2", "C2", "Q"],
                &["B1", "C1", "R"],
                &["B2", "C2", "R"],
                &["P", "Q", "R"],
            ],
            &[
                ("O", hom(0, 0, 1)),
                ("A1", hom(-2, -2, 1)),
                ("A2", hom(4, 4, 1)),
                ("B1", hom(-2, 0, 1)),
                ("B2", hom(-4, 0, 1)),
                ("C1", hom(-3, -4, 1)),
                ("C2", hom(3, 4, 1)),
                ("P", hom(2, -1, -1)),
                ("Q", hom(1, 4, 1)),
                ("R", hom(5, -4, -3)),
            ],
        ),
        drawn(
            "near9-example",
            "near-configuration on 9 points with one point at infinity",
            &[
                &["a", "b", "d", "e"],
                &["b", "c"],
                &["a", "c", "h"],
                &["c", "e", "f"],
                &["e", "h", "i"],
                &["d", "g", "h"],
                &["a", "f", "g"],
                &["b", "g", "i"],
                &["d", "f", "i"],
            ],
            &[
                ("a", pt(z(4), z(0))),
                ("b", hom(1, 0, 0)),
                ("c", pt(z(0), z(6))),
                ("d", pt(z(0), z(0))),
                ("e", pt(z(-4), z(0))),
                ("f", pt(z(-2), z(3))),
                ("g", pt(z(1), q(3, 2))),
                ("h", pt(z(2), z(3))),
                ("i", pt(z(-1), q(3, 2))),
            ],
        ),
        replayed(
            "near10-sporadic",
            "near-configuration on 10 points",
            &[
                &["a", "h", "i", "inf0"],
                &["a", "b", "d"],
                &["a", "c", "e"],
                &["d", "f", "i"],
                &["e", "g", "i"],
                &["b", "f", "inf0"],
                &["c", "g", "inf0"],
                &["b", "g", "h"],
                &["c", "f", "h"],
                &["d", "e"],
            ],
        ),
        replayed(
            "near11-sporadic",
            "near-configuration on 11 points",
            &[
                &["a", "d", "f", "j"],
                &["a", "c", "k"],
                &["a", "b", "g"],
                &["b", "e", "h"],
                &["c", "g", "i"],
                &["b", "c", "d"],
                &["d", "e", "g"],
                &["f", "h", "i"],
                &["e", "f", "k"],
                &["h", "j", "k"],
                &["i", "j"],
            ],
        ),
        replayed(
            "near12-sporadic",
            "near-configuration on 12 points",
            &[
                &["c", "g"],
                &["a", "b", "h"],
                &["a", "d", "inf0"],
                &["a", "f", "inf1"],
                &["b", "e", "inf1"],
                &["e", "h", "inf0"],
                &["c", "h", "inf2"],
                &["c", "f", "inf3"],
                &["d", "e", "f"],
                &["b", "g", "inf3"],
                &["d", "g", "inf2"],
                &["inf0", "inf1", "inf2", "inf3"],
            ],
        ),
        replayed(
            "near13-sporadic",
            "near-configuration on 13 points",
            &[
                &["a", "b", "g", "h"],
                &["a", "c", "inf0"],
                &["a", "d", "inf1"],
                &["b", "e", "inf1"],
                &["b", "f", "inf0"],
                &["c", "h", "i"],
                &["d", "g", "i"],
                &["e", "h", "j"],
                &["f", "g", "j"],
                &["c", "d", "inf2"],
                &["e", "f", "inf2"],
                &["i", "j"],
                &["inf0", "inf1", "inf2"],
            ],
        ),
    ]
}
