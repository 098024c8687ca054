//! JSON reports. Every rational is a `"p/q"` string and `∞` is `"inf"`.

use serde_json::{json, Map, Value};

use lotus_core::engine::{singular_points, FanNodeKind};
use lotus_core::lattice::{fmt_rat, ExtRat, Rat};
use lotus_core::lotus::{self_intersections, Lotus, MembraneKind, Piece, VertexId, VertexRole};

use crate::text::ew_name;
use crate::Artifact;

pub const SCHEMA: u32 = 1;

fn r(x: &Rat) -> Value {
    Value::String(fmt_rat(x))
}

fn er(x: &ExtRat) -> Value {
    Value::String(x.to_string())
}

fn rs(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(r).collect())
}

fn pt(p: &(Rat, Rat)) -> Value {
    json!([r(&p.0), r(&p.1)])
}

fn role(x: VertexRole) -> &'static str {
    match x {
        VertexRole::Reference => "reference",
        VertexRole::Auxiliary => "auxiliary",
        VertexRole::Exceptional => "exceptional",
        VertexRole::Branch => "branch",
    }
}

fn label(l: &Lotus, v: VertexId) -> Value {
    Value::String(l.label(v).to_string())
}

fn edge_list(l: &Lotus, edges: &[(VertexId, VertexId)]) -> Value {
    Value::Array(edges.iter().map(|&(a, b)| json!([label(l, a), label(l, b)])).collect())
}

fn lotus_value(l: &Lotus, truncated: Option<&lotus_core::lotus::TruncatedLotus>) -> Value {
    let vertices: Vec<Value> =
        l.vertices.iter().map(|v| json!({"label": v.label, "role": role(v.role), "basic": v.basic})).collect();
    let membranes: Vec<Value> = l
        .membranes
        .iter()
        .map(|m| {
            let mut o = Map::new();
            o.insert("base".into(), json!([label(l, m.e1), label(l, m.e2)]));
            match &m.kind {
                MembraneKind::Newton { fan, .. } => {
                    o.insert("kind".into(), json!("newton"));
                    o.insert("fan".into(), rs(fan));
                }
                MembraneKind::Segment => {
                    o.insert("kind".into(), json!("segment"));
                }
            }
            o.insert("lateral".into(), Value::Array(m.lateral.iter().map(|&v| label(l, v)).collect()));
            Value::Object(o)
        })
        .collect();
    let petals: Vec<Value> = l
        .petals
        .iter()
        .map(|p| {
            json!({
                "membrane": p.membrane,
                "apex": label(l, p.apex),
                "base": [label(l, p.base.0), label(l, p.base.1)],
                "parent": p.parent.map(|q| label(l, l.petals[q].apex)),
            })
        })
        .collect();
    let weights = match truncated {
        Some(t) => t.self_intersections(l),
        None => self_intersections(l),
    };
    let weights: Map<String, Value> = weights.into_iter().map(|(v, w)| (l.label(v).to_string(), json!(w))).collect();
    let mut o = Map::new();
    o.insert("vertices".into(), Value::Array(vertices));
    o.insert("membranes".into(), Value::Array(membranes));
    o.insert("petals".into(), Value::Array(petals));
    o.insert("marked".into(), Value::Array(l.marked.iter().map(|&v| label(l, v)).collect()));
    o.insert("weights".into(), Value::Object(weights));
    if let Some(t) = truncated {
        o.insert("removed".into(), Value::Array(t.removed.iter().map(|&v| label(l, v)).collect()));
        let pieces: Vec<Value> = t
            .pieces
            .iter()
            .map(|p| match p {
                Piece::Petal(k) => json!({"kind": "petal", "apex": label(l, l.petals[*k].apex)}),
                Piece::Semipetal { kept, .. } => {
                    json!({"kind": "semipetal", "kept": [label(l, kept.0), label(l, kept.1)]})
                }
                Piece::Axis { apex, .. } => json!({"kind": "axis", "apex": label(l, *apex)}),
                Piece::Segment { membrane } => {
                    let m = &l.membranes[*membrane];
                    json!({"kind": "segment", "ends": [label(l, m.e1), label(l, m.e2)]})
                }
            })
            .collect();
        o.insert("pieces".into(), Value::Array(pieces));
    }
    Value::Object(o)
}

pub fn result(a: &Artifact) -> Value {
    match a {
        Artifact::Polygon(p) => json!({
            "vertices": p.vertices().iter().map(pt).collect::<Vec<_>>(),
            "fan": rs(&lotus_core::polygon::newton_fan(p)),
        }),
        Artifact::Fan(f) => json!({"fan": rs(f)}),
        Artifact::NonDegeneracy { nondegenerate, edges } => json!({
            "nondegenerate": nondegenerate,
            "edges": edges.iter().map(|e| json!({
                "edge": [pt(&e.edge.0), pt(&e.edge.1)],
                "restriction": rs(&e.restriction),
                "squarefree": e.squarefree,
            })).collect::<Vec<_>>(),
        }),
        Artifact::Resolution(rec) => {
            let crosses: Vec<Value> = rec
                .crosses
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "level": c.level,
                        "a": c.a,
                        "b": c.b,
                        "host": c.host,
                        "terminal": c.is_terminal(),
                        "fan": c.fan().map(rs),
                        "divisors": c.marks(),
                    })
                })
                .collect();
            let divisors: Vec<Value> = rec
                .divisors
                .iter()
                .map(|d| {
                    json!({
                        "label": d.label,
                        "cross": d.cross,
                        "slope": r(&d.slope),
                        "e": r(&d.exponent),
                        "i": d.index.to_string(),
                        "c": r(&d.contact),
                    })
                })
                .collect();
            let auxiliaries: Vec<Value> = rec
                .auxiliaries
                .iter()
                .map(|x| json!({"label": x.label, "series": x.series.to_string(), "divisor": x.divisor}))
                .collect();
            let singular: Vec<Value> = singular_points(rec)
                .unwrap_or_default()
                .iter()
                .map(|s| {
                    json!({
                        "cross": s.cross,
                        "between": [s.between.0, s.between.1],
                        "slopes": [er(&s.slopes.0), er(&s.slopes.1)],
                        "determinant": s.determinant.to_string(),
                    })
                })
                .collect();
            let traces: Vec<Value> = rec
                .traces
                .iter()
                .map(|t| {
                    json!({
                        "branch": t.label,
                        "end_cross": t.end_cross,
                        "steps": t.steps.iter().map(|s| json!({
                            "cross": s.cross,
                            "slope": r(&s.slope),
                            "divisor": s.divisor,
                            "renormalized": s.renormalized.to_string(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({
                "strategy": rec.strategy.name(),
                "levels": rec.levels(),
                "crosses": crosses,
                "fans": rec.modified_crosses().map(|c| rs(c.fan().unwrap_or(&[]))).collect::<Vec<_>>(),
                "divisors": divisors,
                "auxiliaries": auxiliaries,
                "singular_points": singular,
                "traces": traces,
            })
        }
        Artifact::FanTree(ft) => json!({
            "nodes": ft.nodes.iter().map(|n| json!({
                "label": n.label,
                "parent": n.parent.map(|p| ft.nodes[p].label.clone()),
                "kind": match n.kind {
                    FanNodeKind::Root => "root",
                    FanNodeKind::Divisor => "divisor",
                    FanNodeKind::Auxiliary => "auxiliary",
                    FanNodeKind::Branch => "branch",
                },
                "cross": n.cross,
                "slope": er(&n.slope),
            })).collect::<Vec<_>>(),
        }),
        Artifact::EggersWall(t) => json!({
            "nodes": (0..t.nodes().len()).map(|k| {
                let n = t.node(k);
                json!({
                    "name": ew_name(t, k),
                    "parent": n.parent.map(|p| ew_name(t, p)),
                    "e": er(&n.exponent),
                    "i": n.index.to_string(),
                    "c": er(&n.contact),
                    "branches": n.cluster.iter().map(|&b| t.branch_labels()[b].clone()).collect::<Vec<_>>(),
                })
            }).collect::<Vec<_>>(),
        }),
        Artifact::Lotus { lotus, truncated } => lotus_value(lotus, truncated.as_ref()),
        Artifact::DualGraph { lotus, graph, truncated } => json!({
            "truncated": truncated,
            "vertices": graph.vertices.iter().map(|v| json!({
                "label": v.label,
                "role": role(v.role),
                "weight": v.weight,
            })).collect::<Vec<_>>(),
            "edges": edge_list(lotus, &graph.edges),
        }),
        Artifact::Enriques { lotus, tree } => json!({
            "root": tree.root.map(|v| label(lotus, v)),
            "edges": edge_list(lotus, &tree.edges),
        }),
        Artifact::Proximity { lotus, edges } => json!({"edges": edge_list(lotus, edges)}),
        Artifact::Intersection { a, b, value } => json!({"a": a, "b": b, "intersection": value.to_string()}),
        Artifact::Regularization { fan, regular } => json!({"fan": rs(fan), "regularized": rs(regular)}),
    }
}

/// Full report, pretty printed with sorted keys and a trailing newline.
pub fn report(command: &str, digest: &str, a: &Artifact) -> String {
    let v = json!({
        "schema": SCHEMA,
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "input_digest": format!("sha256:{digest}"),
        "result": result(a),
    });
    serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
}
