//! Plain text output, one fact per line.

use std::collections::BTreeSet;
use std::fmt::Write;

use lotus_core::engine::{singular_points, FanNodeKind};
use lotus_core::ewtree::EwTree;
use lotus_core::lattice::{fmt_rat, Rat};
use lotus_core::lotus::{dual_graph, DualGraph, Lotus, MembraneKind, Piece, VertexRole};

use crate::Artifact;

fn rats(v: &[Rat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(" ")
}

fn point(p: &(Rat, Rat)) -> String {
    format!("({},{})", fmt_rat(&p.0), fmt_rat(&p.1))
}

/// `Σ c_k v^k` with the terms in increasing degree.
pub fn polynomial(c: &[Rat]) -> String {
    let mut out = String::new();
    for (k, a) in c.iter().enumerate().filter(|(_, a)| !num_traits::Zero::is_zero(*a)) {
        let neg = a < &Rat::from_integer(0.into());
        let m = if neg { -a.clone() } else { a.clone() };
        let coeff = if k > 0 && m == Rat::from_integer(1.into()) { String::new() } else { fmt_rat(&m) };
        let var = match k {
            0 => String::new(),
            1 => "v".into(),
            _ => format!("v^{k}"),
        };
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&coeff);
        out.push_str(&var);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Name of a dual-graph end: `L` is the curve `Z(x)`, `L1` is `Z(y)`.
pub fn curve_name(label: &str) -> String {
    match label {
        "L" => "Z(x)".into(),
        "L1" => "Z(y)".into(),
        other => other.into(),
    }
}

fn arrows(l: &Lotus, g: &DualGraph, v: usize) -> Vec<String> {
    g.neighbours(v)
        .into_iter()
        .filter(|&n| l.vertices[n].role == VertexRole::Branch)
        .map(|n| l.label(n).to_string())
        .collect()
}

fn dual_token(l: &Lotus, g: &DualGraph, v: usize) -> String {
    let dv = g.vertex(v).expect("vertex of the graph");
    match dv.weight {
        Some(w) if arrows(l, g, v).is_empty() => w.to_string(),
        Some(w) => format!("{w}*"),
        None => curve_name(&dv.label),
    }
}

/// The chain from `Z(y)` to `Z(x)` of the full dual graph, restricted to
/// the vertices of `g`, when `g` is itself that chain.
fn chain_order(l: &Lotus, g: &DualGraph) -> Option<Vec<usize>> {
    let full = dual_graph(l);
    let path = full.chain(l.find("L1")?, l.find("L")?)?;
    let core: BTreeSet<usize> = g.vertices.iter().filter(|v| v.role != VertexRole::Branch).map(|v| v.id).collect();
    let order: Vec<usize> = path.into_iter().filter(|v| core.contains(v)).collect();
    let linked = order.windows(2).all(|w| g.neighbours(w[0]).contains(&w[1]));
    (order.len() == core.len() && linked).then_some(order)
}

fn dual_text(l: &Lotus, g: &DualGraph) -> String {
    if let Some(order) = chain_order(l, g) {
        let tokens: Vec<String> = order.iter().map(|&v| dual_token(l, g, v)).collect();
        let mut out = tokens.join(" ") + "\n";
        for &v in &order {
            let a = arrows(l, g, v);
            if !a.is_empty() {
                let _ = writeln!(out, "arrow {} at {}", a.join(" "), l.label(v));
            }
        }
        return out;
    }
    let mut out = String::new();
    for v in g.vertices.iter().filter(|v| v.role != VertexRole::Branch) {
        let w = v.weight.map_or_else(|| curve_name(&v.label), |w| w.to_string());
        let a = arrows(l, g, v.id);
        if a.is_empty() {
            let _ = writeln!(out, "vertex {} {w}", v.label);
        } else {
            let _ = writeln!(out, "vertex {} {w} arrows {}", v.label, a.join(" "));
        }
    }
    for &(a, b) in &g.edges {
        let is_arrow = l.vertices[a].role == VertexRole::Branch || l.vertices[b].role == VertexRole::Branch;
        if !is_arrow {
            let _ = writeln!(out, "edge {} {}", l.label(a), l.label(b));
        }
    }
    out
}

pub fn ew_name(t: &EwTree, k: usize) -> String {
    t.node(k).label.clone().unwrap_or_else(|| format!("P{k}"))
}

fn lotus_text(l: &Lotus, truncated: Option<&lotus_core::lotus::TruncatedLotus>) -> String {
    let mut out = String::new();
    for (k, m) in l.membranes.iter().enumerate() {
        let (a, b) = (l.label(m.e1), l.label(m.e2));
        match &m.kind {
            MembraneKind::Newton { fan, .. } => {
                let _ = writeln!(out, "membrane {k} [{a}, {b}] fan {}", rats(fan));
            }
            MembraneKind::Segment => {
                let _ = writeln!(out, "membrane {k} [{a}, {b}] segment");
            }
        }
        let lateral: Vec<&str> = m.lateral.iter().map(|&v| l.label(v)).collect();
        let _ = writeln!(out, "  lateral {}", lateral.join(" "));
        for p in l.petals.iter().filter(|p| p.membrane == k) {
            let _ = writeln!(out, "  petal {} on [{}, {}]", l.label(p.apex), l.label(p.base.0), l.label(p.base.1));
        }
    }
    let weights = match truncated {
        Some(t) => {
            let removed: Vec<&str> = t.removed.iter().map(|&v| l.label(v)).collect();
            let _ = writeln!(out, "removed {}", removed.join(" "));
            for piece in &t.pieces {
                let line = match piece {
                    Piece::Petal(p) => format!("piece petal {}", l.label(l.petals[*p].apex)),
                    Piece::Semipetal { kept, .. } => format!("piece semipetal {} {}", l.label(kept.0), l.label(kept.1)),
                    Piece::Axis { apex, .. } => format!("piece axis {}", l.label(*apex)),
                    Piece::Segment { membrane } => {
                        let m = &l.membranes[*membrane];
                        format!("piece segment {} {}", l.label(m.e1), l.label(m.e2))
                    }
                };
                let _ = writeln!(out, "{line}");
            }
            t.self_intersections(l)
        }
        None => lotus_core::lotus::self_intersections(l),
    };
    for (v, w) in weights {
        let _ = writeln!(out, "weight {} {w}", l.label(v));
    }
    out
}

pub fn render(a: &Artifact) -> String {
    let mut out = String::new();
    match a {
        Artifact::Polygon(p) => {
            let v: Vec<String> = p.vertices().iter().map(point).collect();
            let _ = writeln!(out, "vertices {}", v.join(" "));
            let _ = writeln!(out, "fan {}", rats(&lotus_core::polygon::newton_fan(p)));
        }
        Artifact::Fan(f) => {
            let _ = writeln!(out, "{}", rats(f));
        }
        Artifact::NonDegeneracy { nondegenerate, edges } => {
            let _ = writeln!(out, "{nondegenerate}");
            for e in edges {
                let verdict = if e.squarefree { "simple roots" } else { "repeated root" };
                let _ = writeln!(
                    out,
                    "edge {} {}: {}: {verdict}",
                    point(&e.edge.0),
                    point(&e.edge.1),
                    polynomial(&e.restriction)
                );
            }
        }
        Artifact::Resolution(rec) => {
            let _ = writeln!(out, "strategy {}", rec.strategy.name());
            let _ = writeln!(out, "levels {}", rec.levels());
            for c in &rec.crosses {
                let host = c.host.map(|h| format!(" on cross {h}")).unwrap_or_default();
                match c.fan() {
                    Some(fan) => {
                        let _ = writeln!(
                            out,
                            "cross {} level {} ({}, {}){host} fan {} divisors {}",
                            c.id,
                            c.level,
                            c.a,
                            c.b,
                            rats(fan),
                            c.marks().join(" ")
                        );
                    }
                    None => {
                        let _ = writeln!(out, "cross {} level {} ({}, {}){host} terminal", c.id, c.level, c.a, c.b);
                    }
                }
            }
            for x in &rec.auxiliaries {
                let on = x.divisor.as_ref().map(|d| format!(" on {d}")).unwrap_or_default();
                let _ = writeln!(out, "auxiliary {} = {}{on}", x.label, x.series);
            }
            for d in &rec.divisors {
                let _ = writeln!(
                    out,
                    "divisor {} slope {} e={} i={} c={}",
                    d.label,
                    fmt_rat(&d.slope),
                    fmt_rat(&d.exponent),
                    d.index,
                    fmt_rat(&d.contact)
                );
            }
            match singular_points(rec) {
                Ok(points) => {
                    let _ = writeln!(out, "singular points {}", points.len());
                    for s in points {
                        let _ = writeln!(
                            out,
                            "  cross {} between {} and {} det {}",
                            s.cross, s.between.0, s.between.1, s.determinant
                        );
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "singular points unavailable: {e}");
                }
            }
            for t in &rec.traces {
                let steps: Vec<String> =
                    t.steps.iter().map(|s| format!("{}({})", s.divisor, fmt_rat(&s.slope))).collect();
                let _ = writeln!(out, "trace {}: {}", t.label, steps.join(" "));
            }
        }
        Artifact::FanTree(ft) => {
            for n in &ft.nodes {
                let kind = match n.kind {
                    FanNodeKind::Root => "root",
                    FanNodeKind::Divisor => "divisor",
                    FanNodeKind::Auxiliary => "auxiliary",
                    FanNodeKind::Branch => "branch",
                };
                let parent = n.parent.map(|p| ft.nodes[p].label.clone()).unwrap_or_else(|| "-".into());
                let _ = writeln!(out, "{} {kind} parent {parent} slope {}", n.label, n.slope);
            }
        }
        Artifact::EggersWall(t) => {
            for k in 0..t.nodes().len() {
                let n = t.node(k);
                let parent = n.parent.map(|p| ew_name(t, p)).unwrap_or_else(|| "-".into());
                let _ =
                    writeln!(out, "{} e={} i={} c={} parent {parent}", ew_name(t, k), n.exponent, n.index, n.contact);
            }
        }
        Artifact::Lotus { lotus, truncated } => out = lotus_text(lotus, truncated.as_ref()),
        Artifact::DualGraph { lotus, graph, .. } => out = dual_text(lotus, graph),
        Artifact::Enriques { lotus, tree } => {
            let root = tree.root.map(|r| lotus.label(r).to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "root {root}");
            for &(a, b) in &tree.edges {
                let _ = writeln!(out, "{} -> {}", lotus.label(a), lotus.label(b));
            }
        }
        Artifact::Proximity { lotus, edges } => {
            for &(a, b) in edges {
                let _ = writeln!(out, "{} -- {}", lotus.label(a), lotus.label(b));
            }
        }
        Artifact::Intersection { value, .. } => {
            let _ = writeln!(out, "{value}");
        }
        Artifact::Regularization { regular, .. } => {
            let _ = writeln!(out, "{}", rats(regular));
        }
    }
    out
}
