mod common;

use lotus_core::lattice::{
    cf_expand, cf_value, int, is_regular_pair, primitive_of_slope, rat, regularize, slow_approximations, wedge, Cone2,
    ContinuedFraction, ExtRat, LatticeVector,
};
use lotus_core::Error;

fn cf(terms: &[i64]) -> ContinuedFraction {
    ContinuedFraction { terms: terms.iter().map(|&t| t.into()).collect() }
}

#[test]
fn expansions_of_worked_values() {
    assert_eq!(cf_expand(&rat(49, 11)).unwrap(), cf(&[4, 2, 5]));
    assert_eq!(cf_value(&cf(&[3, 2, 1, 4])).unwrap(), rat(47, 14));
    assert_eq!(cf_expand(&rat(3, 5)).unwrap(), cf(&[0, 1, 1, 2]));
    assert_eq!(cf_expand(&int(1)).unwrap(), cf(&[1]));
    // a non-canonical expansion still evaluates
    assert_eq!(cf_value(&cf(&[1, 1])).unwrap(), int(2));
}

#[test]
fn expansion_rejects_non_positive_values() {
    assert!(matches!(cf_expand(&int(0)), Err(Error::Domain(_))));
    assert!(matches!(cf_expand(&rat(-1, 2)), Err(Error::Domain(_))));
    assert!(cf_value(&cf(&[])).is_err());
    assert!(cf_value(&cf(&[1, 0, 2])).is_err());
}

#[test]
fn wedge_of_worked_pairs() {
    assert_eq!(wedge(&rat(49, 11), &rat(47, 14)).unwrap(), int(4));
    assert_eq!(wedge(&rat(3, 2), &rat(7, 3)).unwrap(), int(2));
    assert_eq!(wedge(&rat(3, 2), &rat(5, 3)).unwrap(), rat(3, 2));
    assert_eq!(wedge(&int(1), &rat(5, 3)).unwrap(), int(1));
}

#[test]
fn wedge_agrees_with_stern_brocot_meet() {
    for p in 1..25i64 {
        for q in 1..25i64 {
            for (r, s) in [(3, 7), (5, 2), (13, 8), (1, 4)] {
                let (a, b) = (rat(p, q), rat(r, s));
                assert_eq!(wedge(&a, &b).unwrap(), common::stern_brocot_meet(&a, &b), "{a} ∧ {b}");
            }
        }
    }
}

#[test]
fn slow_approximations_follow_the_stern_brocot_path() {
    for (p, q) in [(3, 2), (3, 5), (47, 14), (1, 7), (7, 1)] {
        let l = rat(p, q);
        assert_eq!(slow_approximations(&l).unwrap(), common::stern_brocot_path(&l));
    }
}

#[test]
fn primitive_vectors_and_regular_pairs() {
    assert_eq!(primitive_of_slope(&ExtRat::Finite(rat(3, 2))).unwrap(), LatticeVector::new(2, 3));
    assert_eq!(primitive_of_slope(&ExtRat::Finite(int(0))).unwrap(), LatticeVector::e1());
    assert_eq!(primitive_of_slope(&ExtRat::Infinite).unwrap(), LatticeVector::e2());
    assert!(is_regular_pair(&LatticeVector::new(1, 2), &LatticeVector::new(2, 5)).unwrap());
    assert!(!is_regular_pair(&LatticeVector::new(5, 3), &LatticeVector::new(1, 2)).unwrap());
    assert!(is_regular_pair(&LatticeVector::new(2, 4), &LatticeVector::new(1, 1)).is_err());
    assert!(Cone2::new(LatticeVector::new(1, 1), LatticeVector::new(2, 2)).is_err());
    assert!(Cone2::new(LatticeVector::new(1, 0), LatticeVector::new(1, 1)).unwrap().is_regular());
}

#[test]
fn regularization_of_worked_fan() {
    let fan = [rat(3, 5), int(2), rat(5, 2)];
    let expected = vec![rat(1, 2), rat(3, 5), rat(2, 3), int(1), int(2), rat(5, 2), int(3)];
    assert_eq!(regularize(&fan).unwrap(), expected);
    assert_eq!(common::regularize_by_hull(&fan), expected);
    assert!(regularize(&[]).unwrap().is_empty());
    assert!(regularize(&[int(0)]).is_err());
}

#[test]
fn hull_oracle_agrees_on_small_fans() {
    for p in 1..12i64 {
        for q in 1..12i64 {
            let fan = [rat(p, q), rat(q + p, q)];
            assert_eq!(regularize(&fan).unwrap(), common::regularize_by_hull(&fan), "{p}/{q}");
        }
    }
}
