use std::collections::BTreeSet;

use lotus_core::engine::{fan_tree, pseudo_resolve, AuxStrategy};
use lotus_core::lattice::{int, rat, regularize, Rat};
use lotus_core::lotus::{
    abstract_lotus, build_newton_lotus, dual_graph, enriques_tree, glue_lotuses, proximity_graph, self_intersections,
    truncate_lotus, Lotus, MembraneKind, VertexRole, A1, A2,
};
use lotus_core::Branch;

fn weight_of(l: &Lotus, label: &str) -> i64 {
    self_intersections(l)[&l.find(label).unwrap()]
}

fn branches(list: &[(&str, &str)]) -> Vec<Branch> {
    list.iter().map(|(l, s)| Branch::parse(*l, s).unwrap()).collect()
}

fn running_example() -> Vec<Branch> {
    branches(&[
        ("C1", "x^(5/2)"),
        ("C2", "x^2"),
        ("C3", "-x^2"),
        ("C4", "x^(3/5) + x^(3/4)"),
        ("C5", "x^(3/5) + x^(11/15)"),
        ("C6", "2x^(3/5) + x^(6/5)"),
        ("C7", "2x^(3/5) + x^(14/15) + x^(29/30)"),
    ])
}

fn labels_on_lateral(l: &Lotus) -> Vec<String> {
    l.membranes[0].lateral.iter().map(|&v| l.label(v).to_string()).collect()
}

#[test]
fn petals_of_three_halves() {
    let l = build_newton_lotus(&[rat(3, 2)]).unwrap();
    assert_eq!(l.petals.len(), 3);
    assert_eq!(labels_on_lateral(&l), ["e1", "p(1)", "p(3/2)", "p(2)", "e2"]);
    assert_eq!((weight_of(&l, "p(1)"), weight_of(&l, "p(2)"), weight_of(&l, "p(3/2)")), (-3, -2, -1));
    // proximity among the three exceptional vertices is a triangle
    assert_eq!(proximity_graph(&l).len(), 3);
}

#[test]
fn two_ray_lotus_matches_its_regularization() {
    let l = build_newton_lotus(&[rat(3, 2), rat(7, 3)]).unwrap();
    assert_eq!(l.petals.len(), 6);
    let lateral: Vec<String> = labels_on_lateral(&l);
    assert_eq!(lateral, ["e1", "p(1)", "p(3/2)", "p(2)", "p(7/3)", "p(5/2)", "p(3)", "e2"]);
    let w: Vec<i64> = lateral[1..7].iter().map(|s| weight_of(&l, s)).collect();
    assert_eq!(w, [-3, -1, -5, -1, -2, -2]);
    assert_eq!(
        regularize(&[rat(3, 2), rat(7, 3)]).unwrap(),
        vec![int(1), rat(3, 2), int(2), rat(7, 3), rat(5, 2), int(3)]
    );
}

#[test]
fn running_example_fan_lotus_has_seven_petals() {
    let l = build_newton_lotus(&[rat(3, 5), int(2), rat(5, 2)]).unwrap();
    let apexes: BTreeSet<String> = l.petals.iter().map(|p| l.label(p.apex).to_string()).collect();
    let expected: BTreeSet<String> =
        ["p(1)", "p(1/2)", "p(2/3)", "p(3/5)", "p(2)", "p(3)", "p(5/2)"].iter().map(|s| s.to_string()).collect();
    assert_eq!(apexes, expected);
}

#[test]
fn empty_fan_gives_bare_base() {
    let l = build_newton_lotus(&[]).unwrap();
    assert!(l.petals.is_empty());
    assert_eq!(labels_on_lateral(&l), ["e1", "e2"]);
}

#[test]
fn glued_running_example() {
    let rec = pseudo_resolve(&running_example(), AuxStrategy::Truncation).unwrap();
    let l = glue_lotuses(&rec).unwrap();
    let newton = l.membranes.iter().filter(|m| matches!(m.kind, MembraneKind::Newton { .. })).count();
    let segments = l.membranes.iter().filter(|m| m.kind == MembraneKind::Segment).count();
    assert_eq!((newton, segments), (4, 7));
    // E1 lies on one petal of the first membrane and is the base of two more
    assert_eq!(weight_of(&l, "E1"), -4);
    let t = truncate_lotus(&l);
    let tw = t.self_intersections(&l);
    for (v, w) in self_intersections(&l) {
        assert_eq!(tw[&v], w, "{}", l.label(v));
    }
    let removed: BTreeSet<&str> = t.removed.iter().map(|&v| l.label(v)).collect();
    assert_eq!(removed, BTreeSet::from(["L", "L1", "L2", "L3", "L4"]));
    // Enriques tree spans every petal apex
    let et = enriques_tree(&l);
    assert_eq!(et.vertices().len(), l.petals.len());
    assert_eq!(et.edges.len() + 1, l.petals.len());
    let prox: BTreeSet<(usize, usize)> = proximity_graph(&l).into_iter().collect();
    for (a, b) in et.edges {
        assert!(prox.contains(&(a.min(b), a.max(b))));
    }
}

#[test]
fn dual_graph_is_fan_tree_with_regularizing_vertices() {
    let rec = pseudo_resolve(&running_example(), AuxStrategy::Truncation).unwrap();
    let l = glue_lotuses(&rec).unwrap();
    let g = dual_graph(&l);
    let ft = fan_tree(&rec);
    // contracting the regularizing vertices of the dual graph gives the fan tree
    let mut contracted: BTreeSet<(String, String)> = BTreeSet::new();
    for v in g.vertices.iter().filter(|v| !v.label.starts_with('R')) {
        for n in g.neighbours(v.id) {
            let (mut prev, mut cur) = (v.id, n);
            while l.label(cur).starts_with('R') {
                let next = g.neighbours(cur).into_iter().find(|&x| x != prev).unwrap();
                prev = cur;
                cur = next;
            }
            let (a, b) = (v.label.clone(), l.label(cur).to_string());
            contracted.insert((a.clone().min(b.clone()), a.max(b)));
        }
    }
    let tree: BTreeSet<(String, String)> = ft
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (a, b) = (ft.nodes[a].label.clone(), ft.nodes[b].label.clone());
            (a.clone().min(b.clone()), a.max(b))
        })
        .collect();
    assert_eq!(contracted, tree);
    let regularizing = g.vertices.iter().filter(|v| v.label.starts_with('R')).count();
    let expected: usize =
        rec.modified_crosses().map(|c| regularize(c.fan().unwrap()).unwrap().len() - c.fan().unwrap().len()).sum();
    assert_eq!(regularizing, expected);
}

#[test]
fn cusp_dual_graph_chain() {
    let rec = pseudo_resolve(&branches(&[("C", "x^(3/2)")]), AuxStrategy::Truncation).unwrap();
    let l = glue_lotuses(&rec).unwrap();
    let g = dual_graph(&l);
    let chain = g.chain(l.find("L").unwrap(), l.find("L1").unwrap()).unwrap();
    let w: Vec<Option<i64>> = chain.iter().map(|&v| g.vertex(v).unwrap().weight).collect();
    assert_eq!(w, [None, Some(-3), Some(-1), Some(-2), None]);
    let arrow = l.find("C").unwrap();
    assert_eq!(g.neighbours(arrow), vec![l.find("E1").unwrap()]);
    assert_eq!(g.by_label("C").unwrap().role, VertexRole::Branch);
}

#[test]
fn smooth_branch_still_gets_a_first_cross() {
    let rec = pseudo_resolve(&branches(&[("C", "x")]), AuxStrategy::Truncation).unwrap();
    assert_eq!(rec.levels(), 1);
    assert_eq!(rec.modified_crosses().next().unwrap().fan().unwrap(), &[Rat::from_integer(1.into())]);
    let l = glue_lotuses(&rec).unwrap();
    assert_eq!(l.petals.len(), 1);
    assert_eq!(weight_of(&l, "E1"), -1);
}

#[test]
fn abstract_lotus_path_counts() {
    for (l, to_a1, to_a2) in
        [(rat(3, 2), 2, 3), (int(1), 1, 1), (int(2), 1, 2), (rat(1, 2), 2, 1), (rat(47, 14), 14, 47)]
    {
        let a = abstract_lotus(&l).unwrap();
        assert_eq!(a.count_paths(A1).unwrap(), to_a1.into(), "{l}");
        assert_eq!(a.count_paths(A2).unwrap(), to_a2.into(), "{l}");
    }
    // one triangle per continued fraction unit
    assert_eq!(abstract_lotus(&rat(3, 2)).unwrap().triangles, 3);
}
