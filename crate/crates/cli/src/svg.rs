//! SVG drawings of lotuses. Floating point only appears here, for screen
//! coordinates.
//!
//! Inside a membrane the vertex with lattice coordinates `(c, d)` sits at
//! `x = d/(c+d)`, `h = 1 - 1/(c+d)` in the frame spanned by its base, so
//! every petal is a proper triangle. Each later membrane hangs off the
//! vertex it shares with the lotus drawn so far.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::ToPrimitive;

use lotus_core::lattice::LatticeVector;
use lotus_core::lotus::{Lotus, MembraneKind, Piece, TruncatedLotus, VertexId};

use crate::Artifact;

const SCALE: f64 = 400.0;
const MARGIN: f64 = 40.0;

#[derive(Clone, Copy, Debug, PartialEq)]
struct P(f64, f64);

impl P {
    fn add(self, o: P) -> P {
        P(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: P) -> P {
        P(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, k: f64) -> P {
        P(self.0 * k, self.1 * k)
    }
    fn norm(self) -> f64 {
        self.0.hypot(self.1)
    }
    fn rotate(self, angle: f64) -> P {
        let (s, c) = angle.sin_cos();
        P(c * self.0 - s * self.1, s * self.0 + c * self.1)
    }
    fn mid(self, o: P) -> P {
        self.add(o).mul(0.5)
    }
}

fn local(v: &LatticeVector) -> (f64, f64) {
    let c = v.c.to_f64().unwrap_or(f64::MAX);
    let d = v.d.to_f64().unwrap_or(f64::MAX);
    (d / (c + d), 1.0 - 1.0 / (c + d))
}

/// Screen position of every vertex.
struct Layout {
    pos: BTreeMap<VertexId, P>,
}

impl Layout {
    fn new(l: &Lotus) -> Layout {
        let mut pos: BTreeMap<VertexId, P> = BTreeMap::new();
        let mut children: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut centre: BTreeMap<VertexId, P> = BTreeMap::new();
        let mut size: BTreeMap<VertexId, f64> = BTreeMap::new();
        for m in &l.membranes {
            let (p, q) = match pos.get(&m.e1) {
                None => {
                    pos.insert(m.e1, P(0.0, 0.0));
                    (P(0.0, 0.0), P(SCALE, 0.0))
                }
                Some(&p) => {
                    let from = centre.get(&m.e1).copied().unwrap_or(P(p.0, p.1 + 1.0));
                    let mut dir = p.sub(from);
                    if dir.norm() < 1e-9 {
                        dir = P(0.0, -1.0);
                    }
                    let k = children.entry(m.e1).or_default();
                    let turn = [0.0, 0.6, -0.6, 1.2, -1.2][*k % 5];
                    *k += 1;
                    let len = size.get(&m.e1).copied().unwrap_or(SCALE) * 0.6;
                    (p, p.add(dir.mul(len / dir.norm()).rotate(turn)))
                }
            };
            let base = q.sub(p);
            let up = P(base.1, -base.0);
            let place = |v: &LatticeVector| {
                let (x, h) = local(v);
                p.add(base.mul(x)).add(up.mul(h * 0.5))
            };
            let mut sum = p.add(q);
            let mut n = 2.0;
            for (&v, c) in &m.coords {
                if v != m.e1 {
                    let at = if v == m.e2 { q } else { place(c) };
                    pos.insert(v, at);
                    sum = sum.add(at);
                    n += 1.0;
                }
            }
            pos.insert(m.e2, q);
            let c = sum.mul(1.0 / n);
            for (&v, _) in m.coords.iter().filter(|(&v, _)| v != m.e1) {
                centre.insert(v, c);
                size.insert(v, base.norm());
            }
            centre.insert(m.e2, p.mid(q).add(up.mul(-0.1)));
            size.insert(m.e2, base.norm());
        }
        if l.membranes.is_empty() {
            for (k, _) in l.vertices.iter().enumerate() {
                pos.insert(k, P(SCALE * k as f64, 0.0));
            }
        }
        Layout { pos }
    }

    fn at(&self, v: VertexId) -> P {
        self.pos[&v]
    }

    fn bounds(&self) -> (P, P) {
        let mut lo = P(f64::INFINITY, f64::INFINITY);
        let mut hi = P(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.pos.values() {
            lo = P(lo.0.min(p.0), lo.1.min(p.1));
            hi = P(hi.0.max(p.0), hi.1.max(p.1));
        }
        if self.pos.is_empty() {
            (P(0.0, 0.0), P(0.0, 0.0))
        } else {
            (lo, hi)
        }
    }
}

fn xy(p: P) -> String {
    format!("{:.2},{:.2}", p.0, p.1)
}

fn polygon(out: &mut String, class: &str, pts: &[P]) {
    let pts: Vec<String> = pts.iter().map(|&p| xy(p)).collect();
    let _ = writeln!(out, "    <polygon class=\"{class}\" points=\"{}\"/>", pts.join(" "));
}

fn line(out: &mut String, class: &str, a: P, b: P) {
    let _ = writeln!(
        out,
        "    <line class=\"{class}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
        a.0, a.1, b.0, b.1
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn lotus_svg(l: &Lotus, truncated: Option<&TruncatedLotus>) -> String {
    let lay = Layout::new(l);
    let (lo, hi) = lay.bounds();
    let (w, h) = (hi.0 - lo.0 + 2.0 * MARGIN, hi.1 - lo.1 + 2.0 * MARGIN);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.2} {:.2} {:.2} {:.2}\" width=\"{:.2}\" height=\"{:.2}\">",
        lo.0 - MARGIN,
        lo.1 - MARGIN,
        w,
        h,
        w,
        h
    );
    out.push_str("  <style>polygon{fill:#f3e3c3;stroke:#704214;stroke-width:1}line{stroke:#704214;stroke-width:1.5}");
    out.push_str("line.arrow{stroke:#1c4e80}circle{fill:#704214}text{font:11px sans-serif}</style>\n");
    let removed = truncated.map(|t| &t.removed);
    let kept = |v: VertexId| removed.is_none_or(|r| !r.contains(&v));
    let mut arrows = String::new();
    for (k, m) in l.membranes.iter().enumerate() {
        match &m.kind {
            MembraneKind::Segment => {
                let shown = truncated.is_none_or(|t| t.pieces.contains(&Piece::Segment { membrane: k }));
                if shown {
                    line(&mut arrows, "arrow", lay.at(m.e1), lay.at(m.e2));
                }
            }
            MembraneKind::Newton { .. } => {
                let _ = writeln!(out, "  <g class=\"membrane\" data-index=\"{k}\">");
                let petals: Vec<usize> = (0..l.petals.len()).filter(|&p| l.petals[p].membrane == k).collect();
                if petals.is_empty() && kept(m.e1) && kept(m.e2) {
                    line(&mut out, "base", lay.at(m.e1), lay.at(m.e2));
                }
                match truncated {
                    None => {
                        for p in petals {
                            let [a, b, c] = l.petals[p].vertices();
                            polygon(&mut out, "petal", &[lay.at(a), lay.at(b), lay.at(c)]);
                        }
                    }
                    Some(t) => {
                        for piece in &t.pieces {
                            match piece {
                                Piece::Petal(p) if l.petals[*p].membrane == k => {
                                    let [a, b, c] = l.petals[*p].vertices();
                                    polygon(&mut out, "petal", &[lay.at(a), lay.at(b), lay.at(c)]);
                                }
                                Piece::Semipetal { petal, kept } if l.petals[*petal].membrane == k => {
                                    let (a, b) = l.petals[*petal].base;
                                    let mid = lay.at(a).mid(lay.at(b));
                                    polygon(&mut out, "semipetal", &[lay.at(kept.0), lay.at(kept.1), mid]);
                                }
                                Piece::Axis { petal, apex } if l.petals[*petal].membrane == k => {
                                    let (a, b) = l.petals[*petal].base;
                                    line(&mut out, "axis", lay.at(*apex), lay.at(a).mid(lay.at(b)));
                                }
                                _ => {}
                            }
                        }
                    }
                }
                let _ = writeln!(out, "  </g>");
            }
        }
    }
    if !arrows.is_empty() {
        let _ = write!(out, "  <g class=\"arrows\">\n{arrows}  </g>\n");
    }
    if l.membranes.is_empty() {
        for w in (0..l.vertices.len()).collect::<Vec<_>>().windows(2) {
            line(&mut out, "base", lay.at(w[0]), lay.at(w[1]));
        }
    }
    for v in (0..l.vertices.len()).filter(|&v| kept(v)) {
        let p = lay.at(v);
        if l.marked.contains(&v) {
            let _ = writeln!(out, "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4.00\"/>", p.0, p.1);
        }
        let _ = writeln!(out, "  <text x=\"{:.2}\" y=\"{:.2}\">{}</text>", p.0 + 5.0, p.1 - 5.0, escape(l.label(v)));
    }
    out.push_str("</svg>\n");
    out
}

pub fn render(a: &Artifact) -> Option<String> {
    match a {
        Artifact::Lotus { lotus, truncated } => Some(lotus_svg(lotus, truncated.as_ref())),
        _ => None,
    }
}
