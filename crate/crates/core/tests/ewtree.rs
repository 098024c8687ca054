mod common;

use lotus_core::ewtree::{build_ew_tree, contact, intersection_number, EwTree};
use lotus_core::lattice::{rat, ExtRat};
use lotus_core::{Branch, Error};

fn ew_example() -> Vec<Branch> {
    vec![
        Branch::parse("C1", "x^(7/2) - x^4 + 2x^(17/4) + x^(14/3)").unwrap(),
        Branch::parse("C2", "x^(5/2) + x^(8/3)").unwrap(),
        Branch::parse("C3", "x^2").unwrap(),
    ]
}

fn path(t: &EwTree, label: &str) -> Vec<(ExtRat, i64)> {
    let mut ids = t.ancestors(t.leaf(label).unwrap());
    ids.reverse();
    ids.iter().map(|&k| (t.node(k).exponent.clone(), t.node(k).index.clone().try_into().unwrap())).collect()
}

#[test]
fn eggers_wall_golden_tree() {
    let t = build_ew_tree(&ew_example()).unwrap();
    let f = |p: i64, q: i64| ExtRat::Finite(rat(p, q));
    assert_eq!(
        path(&t, "C1"),
        vec![
            (f(0, 1), 1),
            (f(2, 1), 1),
            (f(5, 2), 1),
            (f(7, 2), 1),
            (f(17, 4), 2),
            (f(14, 3), 4),
            (ExtRat::Infinite, 12)
        ]
    );
    assert_eq!(path(&t, "C2"), vec![(f(0, 1), 1), (f(2, 1), 1), (f(5, 2), 1), (f(8, 3), 2), (ExtRat::Infinite, 6)]);
    assert_eq!(path(&t, "C3"), vec![(f(0, 1), 1), (f(2, 1), 1), (ExtRat::Infinite, 1)]);
    let marked: Vec<ExtRat> = t
        .marked_nodes()
        .into_iter()
        .map(|k| t.node(k).exponent.clone())
        .filter(|e| !e.is_infinite() && *e != f(0, 1))
        .collect();
    let mut marked = marked;
    marked.sort();
    assert_eq!(marked, vec![f(2, 1), f(5, 2), f(8, 3), f(7, 2), f(17, 4), f(14, 3)]);
}

#[test]
fn intersection_numbers_of_examples() {
    let b = ew_example();
    assert_eq!(intersection_number(&b[0], &b[1]).unwrap(), 180.into());
    let p = |s: &str| Branch::parse("A", s).unwrap();
    assert_eq!(intersection_number(&p("x^(3/2)"), &p("x^(3/2) + x^(7/4)")).unwrap(), 13.into());
    assert_eq!(intersection_number(&p("x^(3/2)"), &p("x^(7/3)")).unwrap(), 9.into());
    assert!(matches!(intersection_number(&p("x^(3/2)"), &p("-x^(3/2)")), Err(Error::DuplicateBranch(..))));
}

#[test]
fn contact_complexity_along_the_first_branch() {
    let t = build_ew_tree(&ew_example()).unwrap();
    let mut ids = t.ancestors(t.leaf("C1").unwrap());
    ids.reverse();
    let c: Vec<ExtRat> = ids.iter().map(|&k| contact(&t, k)).collect();
    // 7/2, then +(3/4)/2, then +(5/12)/4
    let f = |p: i64, q: i64| ExtRat::Finite(rat(p, q));
    assert_eq!(c, vec![f(0, 1), f(2, 1), f(5, 2), f(7, 2), f(31, 8), f(191, 48), ExtRat::Infinite]);
}

#[test]
fn tree_does_not_depend_on_input_order() {
    let b = ew_example();
    let sig = build_ew_tree(&b).unwrap().signature();
    for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
        let pb: Vec<Branch> = perm.iter().map(|&k| b[k].clone()).collect();
        assert_eq!(build_ew_tree(&pb).unwrap().signature(), sig);
    }
}

#[test]
fn duplicates_and_empty_input_are_rejected() {
    let a = Branch::parse("A", "x^(3/2) + x^(7/4)").unwrap();
    let b = Branch::new("B", a.series.conjugate(&1.into())).unwrap();
    assert!(matches!(build_ew_tree(&[a.clone(), b]), Err(Error::DuplicateBranch(..))));
    assert!(build_ew_tree(&[]).is_err());
    assert!(build_ew_tree(&[a.clone(), a]).is_err());
}
