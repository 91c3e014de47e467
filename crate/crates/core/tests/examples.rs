use std::collections::BTreeSet;

use nearconf::{
    catalog, cyclic_config, decide_realizability, isomorphic, near_config,
    non_geometric_compound, verify_realization, ExactCoord, RealizabilityStatus, Rational,
    Realization, Signature,
};

#[test]
fn near_configurations_from_nine_to_fifty() {
    for n in 9..=50 {
        let s = near_config(n).unwrap();
        assert!(s.is_near_config(), "n = {n}");
        assert_eq!(s.signature(), Signature::near(n));
        assert_eq!(s.signature().to_string(), format!("({n}x^3, y^2+{}y^3+y^4)", n - 2));
    }
}

#[test]
fn four_line_points_have_eight_distinct_further_lines() {
    let mut structures: Vec<_> = (9..=20).map(|n| near_config(n).unwrap()).collect();
    structures.push(non_geometric_compound(14).unwrap());
    structures.push(catalog().get("near9-example").unwrap().structure.clone());
    for s in &structures {
        let four = s.unique_line_of_size(4).unwrap();
        let further: Vec<usize> = s
            .line(four)
            .iter()
            .flat_map(|&p| s.lines_through(p).iter().copied().filter(|&l| l != four))
            .collect();
        assert_eq!(further.len(), 8);
        assert_eq!(further.iter().collect::<BTreeSet<_>>().len(), 8);
    }
}

#[test]
fn dual_of_the_nine_point_example() {
    let s = &catalog().get("near9-example").unwrap().structure;
    assert_eq!(s.dual().unwrap().signature().to_string(), "(x^2+7x^3+x^4, 9y^3)");
    assert_eq!(near_config(9).unwrap().dual().unwrap().signature().to_string(), "(x^2+7x^3+x^4, 9y^3)");
}

#[test]
fn rounded_decimal_coordinates_miss_incidences() {
    let s = &catalog().get("near9-example").unwrap().structure;
    let decimals = [
        ("a", 1.94, -2.78),
        ("b", 12., -2.78),
        ("c", 6.78, 4.6),
        ("d", 6.900080628268113, -2.779721990569654),
        ("e", 9.460040156039415, -2.789900756087632),
        ("f", 7.836720335992288, 1.6862158940697083),
        ("g", 5.581856842862181, -0.01398512121645012),
        ("h", 4.810313241399388, 1.6047738546899784),
        ("i", 7.321738309475747, -0.7692402681687687),
    ];
    let mut points = vec![None; 9];
    for (name, x, y) in decimals {
        let c = ExactCoord::affine(Rational::from_float(x).unwrap(), Rational::from_float(y).unwrap());
        points[s.point_index(name).unwrap()] = Some(c);
    }
    let points: Vec<ExactCoord> = points.into_iter().map(Option::unwrap).collect();
    let lines = (0..s.line_count())
        .map(|l| {
            let p = s.line(l);
            points[p[0]].cross(&points[p[1]]).unwrap()
        })
        .collect();
    let r = Realization { points, lines, broken: None };
    let report = verify_realization(s, &r).unwrap();
    assert!(!report.missed.is_empty());
    assert!(report.unwanted.is_empty());
    // The exact catalog coordinates have no such misses.
    let exact = catalog().get("near9-example").unwrap().coordinates.as_ref().unwrap();
    assert!(verify_realization(s, exact).unwrap().is_clean());
}

#[test]
fn non_geometric_compounds() {
    for n in 14..=16 {
        let v = decide_realizability(&non_geometric_compound(n).unwrap(), catalog()).unwrap();
        assert_eq!(v.status, RealizabilityStatus::NotRealizable);
        let w = v.witness.unwrap();
        assert!(isomorphic(&w.component, &cyclic_config(7).unwrap()).is_some());
    }
}
