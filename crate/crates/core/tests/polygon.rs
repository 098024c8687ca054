use lotus_core::lattice::{int, rat, ExtRat, LatticeVector};
use lotus_core::polygon::{
    edge_restriction, elementary_decomposition, is_newton_nondegenerate, minkowski_sum, newton_fan,
    polygon_from_branches, polygon_from_support, trop_eval, trop_eval_polygon, ElementaryPolygon, NewtonPolygon,
    Support, SupportPoint,
};
use lotus_core::puiseux::{PhasedRational, PuiseuxSeries};
use lotus_core::{Branch, Error, Rat};

fn pts(v: &[(i64, i64)]) -> Vec<(Rat, Rat)> {
    v.iter().map(|&(a, b)| (int(a), int(b))).collect()
}

fn newtonobj() -> Support {
    Support::from_integer_terms(&[
        (12, 0, -1),
        (14, 0, 1),
        (7, 2, 1),
        (5, 3, 2),
        (10, 3, -1),
        (3, 4, 1),
        (7, 4, 3),
        (0, 9, 1),
    ])
    .unwrap()
}

#[test]
fn newtonobj_polygon_fan_and_restriction() {
    let s = newtonobj();
    let p = polygon_from_support(&s).unwrap();
    assert_eq!(p.vertices(), pts(&[(0, 9), (3, 4), (7, 2), (12, 0)]).as_slice());
    assert_eq!(newton_fan(&p), vec![rat(3, 5), int(2), rat(5, 2)]);
    let (u, v) = ((int(3), int(4)), (int(7), int(2)));
    assert_eq!(edge_restriction(&s, (&u, &v)).unwrap(), vec![int(1), int(2), int(1)]);
    assert_eq!(edge_restriction(&s, (&v, &u)).unwrap(), vec![int(1), int(2), int(1)]);
    assert!(!is_newton_nondegenerate(&s).unwrap());
    let not_edge = (int(0), int(9));
    assert!(matches!(edge_restriction(&s, (&not_edge, &v)), Err(Error::Domain(_))));
}

#[test]
fn two_branch_example() {
    let s = Support::from_integer_terms(&[(0, 5, 1), (3, 3, -4), (7, 2, -1), (10, 0, 4)]).unwrap();
    assert!(is_newton_nondegenerate(&s).unwrap());
    let p = polygon_from_support(&s).unwrap();
    assert_eq!(p.vertices(), pts(&[(0, 5), (3, 3), (10, 0)]).as_slice());
    let branches = [Branch::parse("A", "2x^(3/2)").unwrap(), Branch::parse("B", "x^(7/3)").unwrap()];
    let q = polygon_from_branches(&branches, &PuiseuxSeries::zero()).unwrap();
    assert_eq!(q, p);
    assert_eq!(newton_fan(&q), vec![rat(3, 2), rat(7, 3)]);
    let parts = elementary_decomposition(&q);
    let f = |a: i64, b: i64| ElementaryPolygon::new(ExtRat::Finite(int(a)), ExtRat::Finite(int(b))).unwrap();
    assert_eq!(parts, vec![f(3, 2), f(7, 3)]);
}

#[test]
fn non_real_coefficients_are_rejected_for_restrictions() {
    let w = PhasedRational::new(int(1), rat(1, 3)).unwrap();
    let s = Support::new([
        SupportPoint { a: int(0), b: int(2), coeff: Some(PhasedRational::one()) },
        SupportPoint { a: int(2), b: int(0), coeff: Some(w) },
    ])
    .unwrap();
    assert!(matches!(is_newton_nondegenerate(&s), Err(Error::UnsupportedCoefficient(_))));
}

#[test]
fn auxiliary_curve_must_be_smooth() {
    let b = [Branch::parse("A", "x^(3/2)").unwrap()];
    assert!(polygon_from_branches(&b, &lotus_core::puiseux::parse_series("x^(1/2)").unwrap()).is_err());
    assert!(polygon_from_branches(&b, &lotus_core::puiseux::parse_series("x^(3/2)").unwrap()).is_err());
    assert!(polygon_from_branches(&[], &PuiseuxSeries::zero()).is_err());
}

#[test]
fn decomposition_with_monomial_factor_sums_back() {
    let p = NewtonPolygon::from_vertices(pts(&[(2, 7), (4, 3), (9, 1)])).unwrap();
    let parts = elementary_decomposition(&p);
    assert_eq!(parts.len(), 4);
    let sum = parts.iter().map(|e| e.to_polygon()).reduce(|a, b| minkowski_sum(&a, &b)).unwrap();
    assert_eq!(sum, p);
}

#[test]
fn tropical_function_reads_vertices() {
    let s = newtonobj();
    let p = polygon_from_support(&s).unwrap();
    for (c, d) in [(1, 1), (5, 3), (1, 2), (0, 1), (3, 7)] {
        let w = LatticeVector::new(c, d);
        assert_eq!(trop_eval(&s, &w).unwrap(), trop_eval_polygon(&p, &w).unwrap());
    }
    assert!(trop_eval(&s, &LatticeVector::new(-1, 1)).is_err());
}

#[test]
fn invalid_polygons_are_rejected() {
    assert!(NewtonPolygon::from_vertices(pts(&[(0, 2), (1, 1), (3, 0), (4, 0)])).is_err());
    assert!(NewtonPolygon::from_vertices(pts(&[(0, 4), (3, 3), (4, 0)])).is_err());
    assert!(ElementaryPolygon::new(ExtRat::Infinite, ExtRat::Infinite).is_err());
    assert!(Support::from_integer_terms(&[(1, 1, 1), (1, 1, 2)]).is_err());
}
