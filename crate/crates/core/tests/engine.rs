use lotus_core::engine::{ew_from_fan_tree, fan_tree, pseudo_resolve, singular_points, AuxStrategy, CrossKind};
use lotus_core::ewtree::build_ew_tree;
use lotus_core::lattice::{fmt_rat, rat, Rat};
use lotus_core::puiseux::characteristic_exponents;
use lotus_core::Branch;

fn running_example() -> Vec<Branch> {
    [
        ("C1", "x^(5/2)"),
        ("C2", "x^2"),
        ("C3", "-x^2"),
        ("C4", "x^(3/5) + x^(3/4)"),
        ("C5", "x^(3/5) + x^(11/15)"),
        ("C6", "2x^(3/5) + x^(6/5)"),
        ("C7", "2x^(3/5) + x^(14/15) + x^(29/30)"),
    ]
    .iter()
    .map(|(l, s)| Branch::parse(*l, s).unwrap())
    .collect()
}

fn fans(rec: &lotus_core::engine::ResolutionRecord) -> Vec<(String, String, Vec<String>)> {
    rec.modified_crosses().map(|c| (c.a.clone(), c.b.clone(), c.fan().unwrap().iter().map(fmt_rat).collect())).collect()
}

#[test]
fn running_example_fans_and_auxiliaries() {
    let rec = pseudo_resolve(&running_example(), AuxStrategy::Truncation).unwrap();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    assert_eq!(
        fans(&rec),
        vec![
            ("L".into(), "L1".into(), s(&["3/5", "2", "5/2"])),
            ("E1".into(), "L2".into(), s(&["2/3", "3/4"])),
            ("E1".into(), "L3".into(), s(&["5/3", "3"])),
            ("E6".into(), "L4".into(), s(&["1/2"])),
        ]
    );
    let aux: Vec<String> = rec.auxiliaries.iter().map(|a| a.series.to_string()).collect();
    assert_eq!(aux, vec!["0", "x^(3/5)", "2x^(3/5)", "2x^(3/5) + x^(14/15)"]);
    assert_eq!(rec.levels(), 3);
    assert_eq!(singular_points(&rec).unwrap().len(), 8);
    let e6 = rec.divisor("E6").unwrap();
    assert_eq!((e6.index.clone(), e6.exponent.clone()), (5.into(), rat(14, 15)));
    let e8 = rec.divisor("E8").unwrap();
    assert_eq!((e8.index.clone(), e8.exponent.clone()), (15.into(), rat(29, 30)));
    let terminals: Vec<(String, String)> = rec
        .crosses
        .iter()
        .filter(|c| matches!(c.kind, CrossKind::Terminal))
        .map(|c| (c.a.clone(), c.b.clone()))
        .collect();
    assert_eq!(terminals.len(), 7);
    assert!(terminals.contains(&("E8".into(), "C7".into())));
    assert!(terminals.contains(&("E7".into(), "C6".into())));
}

#[test]
fn fan_tree_matches_eggers_wall_tree_of_completed_curve() {
    let rec = pseudo_resolve(&running_example(), AuxStrategy::Truncation).unwrap();
    let from_fan = ew_from_fan_tree(&fan_tree(&rec));
    let direct = build_ew_tree(&rec.completed_branches().unwrap()).unwrap();
    assert_eq!(from_fan.signature(), direct.signature());
}

#[test]
fn single_branch_depth_follows_last_characteristic_term() {
    // levels = position of the last characteristic exponent among the terms
    for (s, levels) in [("x^(3/2)", 1), ("x^2", 1), ("x^2 + x^3 + x^(7/2)", 3), ("x^(3/2) + x^(7/4)", 2)] {
        let b = Branch::parse("C", s).unwrap();
        let rec = pseudo_resolve(std::slice::from_ref(&b), AuxStrategy::Truncation).unwrap();
        assert_eq!(rec.levels(), levels, "{s}");
        let ch: Vec<Rat> = characteristic_exponents(&b.series);
        assert!(ch.len() <= levels);
    }
}
