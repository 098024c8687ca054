//! Lotuses: Newton lotuses of fans and their gluing along a resolution.
//!
//! A Newton lotus lives in the weight lattice. Its petals are the triangles
//! `[f1, f2, f1 + f2]` of the Farey subdivision needed to reach every ray of
//! the fan, starting from the base `[e1, e2]`. A glued lotus has one Newton
//! lotus (membrane) per Newton modification and one segment per branch.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Signed;

use crate::engine::ResolutionRecord;
use crate::error::{Error, Result};
use crate::lattice::{fmt_rat, slow_approximations, LatticeVector, Rat};

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexRole {
    /// `L`, or a basis vertex of a stand-alone Newton lotus.
    Reference,
    /// An auxiliary curve `L_j`.
    Auxiliary,
    /// An exceptional divisor: marked `E_k` or regularizing `R_k`.
    Exceptional,
    /// A branch of the curve (arrowhead).
    Branch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LotusVertex {
    pub label: String,
    pub role: VertexRole,
    /// Basis vertex of a membrane not identified with any other vertex.
    pub basic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembraneKind {
    /// Newton lotus of the given fan; `cross` refers to the resolution.
    Newton { cross: Option<usize>, fan: Vec<Rat> },
    /// One-dimensional membrane `[E, C]`.
    Segment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membrane {
    pub kind: MembraneKind,
    pub e1: VertexId,
    pub e2: VertexId,
    /// Position of each vertex in the lattice of the membrane.
    pub coords: BTreeMap<VertexId, LatticeVector>,
    /// Lateral boundary, from `e1` to `e2`.
    pub lateral: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Petal {
    pub membrane: usize,
    pub apex: VertexId,
    pub base: (VertexId, VertexId),
    /// Petal whose apex is a base vertex of this one.
    pub parent: Option<usize>,
}

impl Petal {
    pub fn vertices(&self) -> [VertexId; 3] {
        [self.base.0, self.base.1, self.apex]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lotus {
    pub vertices: Vec<LotusVertex>,
    pub membranes: Vec<Membrane>,
    pub petals: Vec<Petal>,
    pub marked: Vec<VertexId>,
}

impl Lotus {
    pub fn find(&self, label: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.label == label)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.vertices[v].label
    }

    fn add_vertex(&mut self, label: String, role: VertexRole, basic: bool) -> VertexId {
        self.vertices.push(LotusVertex { label, role, basic });
        self.vertices.len() - 1
    }

    /// Adds the Newton lotus of `fan` on the basis `(e1, e2)`. `name` gives
    /// the label of a new apex and whether it is a ray of the fan.
    fn add_newton_membrane(
        &mut self,
        fan: &[Rat],
        cross: Option<usize>,
        e1: VertexId,
        e2: VertexId,
        mut name: impl FnMut(&LatticeVector, bool) -> String,
    ) -> Result<()> {
        let mut apexes = BTreeSet::new();
        for s in fan {
            apexes.extend(slow_approximations(s)?);
        }
        let rays: BTreeSet<&Rat> = fan.iter().collect();
        let m = self.membranes.len();
        let mut coords = BTreeMap::from([(e1, LatticeVector::e1()), (e2, LatticeVector::e2())]);
        let mut petals_here = Vec::new();
        let mut queue = VecDeque::from([(e1, e2, None::<usize>)]);
        while let Some((a, b, parent)) = queue.pop_front() {
            let apex = coords[&a].add(&coords[&b]);
            let slope = Rat::new(apex.d.clone(), apex.c.clone());
            if !apexes.contains(&slope) {
                continue;
            }
            let marked = rays.contains(&slope);
            let v = self.add_vertex(name(&apex, marked), VertexRole::Exceptional, false);
            if marked {
                self.marked.push(v);
            }
            coords.insert(v, apex);
            self.petals.push(Petal { membrane: m, apex: v, base: (a, b), parent });
            let p = self.petals.len() - 1;
            petals_here.push(p);
            queue.push_back((a, v, Some(p)));
            queue.push_back((v, b, Some(p)));
        }
        let lateral = lateral_path(e1, e2, petals_here.iter().map(|&p| &self.petals[p]));
        self.membranes.push(Membrane {
            kind: MembraneKind::Newton { cross, fan: fan.to_vec() },
            e1,
            e2,
            coords,
            lateral,
        });
        Ok(())
    }

    pub fn lateral_edges(&self) -> BTreeSet<(VertexId, VertexId)> {
        let mut out = BTreeSet::new();
        for m in &self.membranes {
            for w in m.lateral.windows(2) {
                out.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        out
    }

    /// Edges of all petals and membranes.
    pub fn skeleton_edges(&self) -> BTreeSet<(VertexId, VertexId)> {
        let mut out = BTreeSet::new();
        let mut add = |a: VertexId, b: VertexId| {
            out.insert((a.min(b), a.max(b)));
        };
        for m in &self.membranes {
            add(m.e1, m.e2);
        }
        for p in &self.petals {
            let [a, b, c] = p.vertices();
            add(a, b);
            add(b, c);
            add(a, c);
        }
        out
    }
}

/// Edges used by exactly one petal form, apart from the base, a path from
/// `e1` to `e2`.
fn lateral_path<'a>(e1: VertexId, e2: VertexId, petals: impl Iterator<Item = &'a Petal>) -> Vec<VertexId> {
    let mut count: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for p in petals {
        let [a, b, c] = p.vertices();
        for (x, y) in [(a, b), (b, c), (a, c)] {
            *count.entry((x.min(y), x.max(y))).or_default() += 1;
        }
    }
    let base = (e1.min(e2), e1.max(e2));
    if count.is_empty() {
        return vec![e1, e2];
    }
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (&(x, y), &n) in &count {
        if n == 1 && (x, y) != base {
            adj.entry(x).or_default().push(y);
            adj.entry(y).or_default().push(x);
        }
    }
    let mut path = vec![e1];
    let mut prev = usize::MAX;
    let mut cur = e1;
    while cur != e2 {
        let next = *adj[&cur].iter().find(|&&n| n != prev).expect("lateral boundary is a path");
        prev = cur;
        cur = next;
        path.push(cur);
    }
    path
}

fn vector_label(v: &LatticeVector) -> String {
    format!("p({})", fmt_rat(&Rat::new(v.d.clone(), v.c.clone())))
}

/// Newton lotus `Λ(E)` of a set of positive slopes. The basis vertices are
/// `e1` and `e2`; an apex is labelled `p(λ)` by its slope.
pub fn build_newton_lotus(slopes: &[Rat]) -> Result<Lotus> {
    let mut fan: Vec<Rat> = slopes.to_vec();
    fan.sort();
    fan.dedup();
    if let Some(s) = fan.iter().find(|s| !s.is_positive()) {
        return Err(Error::Domain(format!("slope {} is not positive", fmt_rat(s))));
    }
    let mut l = Lotus::default();
    let e1 = l.add_vertex("e1".into(), VertexRole::Reference, true);
    let e2 = l.add_vertex("e2".into(), VertexRole::Reference, true);
    l.add_newton_membrane(&fan, None, e1, e2, |v, _| vector_label(v))?;
    Ok(l)
}

/// Glued lotus of a pseudo-resolution. Vertices are identified by label;
/// regularizing divisors get fresh labels `R1, R2, ..` in membrane order.
pub fn glue_lotuses(rec: &ResolutionRecord) -> Result<Lotus> {
    let branch_labels: BTreeSet<&str> = rec.branches.iter().map(|b| b.label.as_str()).collect();
    let mut l = Lotus::default();
    l.add_vertex("L".into(), VertexRole::Reference, true);
    let mut regularizing = 0usize;
    for cr in &rec.crosses {
        let e1 = l.find(&cr.a).ok_or_else(|| Error::Invariant(format!("cross on unknown divisor {}", cr.a)))?;
        let role = if branch_labels.contains(cr.b.as_str()) { VertexRole::Branch } else { VertexRole::Auxiliary };
        let e2 = l.add_vertex(cr.b.clone(), role, !cr.is_terminal());
        match cr.fan() {
            None => {
                l.membranes.push(Membrane {
                    kind: MembraneKind::Segment,
                    e1,
                    e2,
                    coords: BTreeMap::new(),
                    lateral: vec![e1, e2],
                });
            }
            Some(fan) => {
                let marks: BTreeMap<Rat, String> = fan.iter().cloned().zip(cr.marks().iter().cloned()).collect();
                l.add_newton_membrane(fan, Some(cr.id), e1, e2, |v, is_mark| {
                    if is_mark {
                        marks[&Rat::new(v.d.clone(), v.c.clone())].clone()
                    } else {
                        String::new()
                    }
                })?;
                // regularizing vertices are named along the lateral boundary
                let m = l.membranes.last().expect("membrane just added").clone();
                for &v in &m.lateral {
                    if l.vertices[v].label.is_empty() {
                        regularizing += 1;
                        l.vertices[v].label = format!("R{regularizing}");
                    }
                }
            }
        }
    }
    if l.vertices.iter().any(|v| v.label.is_empty()) {
        return Err(Error::Invariant("apex outside the lateral boundary".into()));
    }
    Ok(l)
}

/// Self-intersection of every exceptional vertex: minus the number of
/// petals containing it.
pub fn self_intersections(l: &Lotus) -> BTreeMap<VertexId, i64> {
    let mut out: BTreeMap<VertexId, i64> =
        (0..l.vertices.len()).filter(|&v| l.vertices[v].role == VertexRole::Exceptional).map(|v| (v, 0)).collect();
    for p in &l.petals {
        for v in p.vertices() {
            if let Some(w) = out.get_mut(&v) {
                *w -= 1;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVertex {
    pub id: VertexId,
    pub label: String,
    pub role: VertexRole,
    pub weight: Option<i64>,
}

/// Weighted dual graph of the boundary: the lateral boundary of the lotus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<DualVertex>,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl DualGraph {
    pub fn vertex(&self, id: VertexId) -> Option<&DualVertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn by_label(&self, label: &str) -> Option<&DualVertex> {
        self.vertices.iter().find(|v| v.label == label)
    }

    pub fn neighbours(&self, id: VertexId) -> Vec<VertexId> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Chain from `from` to `to` when the graph, with arrowheads removed, is
    /// a path between these two vertices.
    pub fn chain(&self, from: VertexId, to: VertexId) -> Option<Vec<VertexId>> {
        let core: BTreeSet<VertexId> =
            self.vertices.iter().filter(|v| v.role != VertexRole::Branch).map(|v| v.id).collect();
        let adj =
            |v: VertexId| -> Vec<VertexId> { self.neighbours(v).into_iter().filter(|n| core.contains(n)).collect() };
        if !core.contains(&from) || !core.contains(&to) {
            return None;
        }
        let mut path = vec![from];
        let mut prev = usize::MAX;
        let mut cur = from;
        while cur != to {
            let next: Vec<VertexId> = adj(cur).into_iter().filter(|&n| n != prev).collect();
            if next.len() != 1 {
                return None;
            }
            prev = cur;
            cur = next[0];
            path.push(cur);
        }
        (path.len() == core.len()).then_some(path)
    }
}

fn dual_from_edges(l: &Lotus, edges: BTreeSet<(VertexId, VertexId)>, weights: &BTreeMap<VertexId, i64>) -> DualGraph {
    let ids: BTreeSet<VertexId> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let vertices = ids
        .into_iter()
        .map(|id| DualVertex {
            id,
            label: l.vertices[id].label.clone(),
            role: l.vertices[id].role,
            weight: weights.get(&id).copied(),
        })
        .collect();
    DualGraph { vertices, edges: edges.into_iter().collect() }
}

pub fn dual_graph(l: &Lotus) -> DualGraph {
    dual_from_edges(l, l.lateral_edges(), &self_intersections(l))
}

/// Enriques tree: parent links between petals, joined through the vertex
/// on which each later membrane is glued. Edges point away from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnriquesTree {
    pub root: Option<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl EnriquesTree {
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = self.root.into_iter().collect();
        for &(a, b) in &self.edges {
            out.insert(a);
            out.insert(b);
        }
        out
    }
}

pub fn enriques_tree(l: &Lotus) -> EnriquesTree {
    let mut root = None;
    let mut edges = Vec::new();
    for p in &l.petals {
        match p.parent {
            Some(q) => edges.push((l.petals[q].apex, p.apex)),
            None => {
                let m = &l.membranes[p.membrane];
                if l.vertices[m.e1].role == VertexRole::Exceptional {
                    edges.push((m.e1, p.apex));
                } else if root.is_none() {
                    root = Some(p.apex);
                }
            }
        }
    }
    EnriquesTree { root, edges }
}

/// Edges of the 1-skeleton joining two exceptional vertices.
pub fn proximity_graph(l: &Lotus) -> Vec<(VertexId, VertexId)> {
    let exc = |v: VertexId| l.vertices[v].role == VertexRole::Exceptional;
    l.skeleton_edges().into_iter().filter(|&(a, b)| exc(a) && exc(b)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Petal(usize),
    /// Half of a petal cut along its axis, keeping these two vertices.
    Semipetal {
        petal: usize,
        kept: (VertexId, VertexId),
    },
    /// Axis of the petal whose base consists of two removed vertices.
    Axis {
        petal: usize,
        apex: VertexId,
    },
    Segment {
        membrane: usize,
    },
}

/// Lotus with the basic vertices that are not branches removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLotus {
    pub pieces: Vec<Piece>,
    pub removed: BTreeSet<VertexId>,
    pub dual: DualGraph,
}

impl TruncatedLotus {
    /// Minus the number of pieces containing each remaining exceptional vertex.
    pub fn self_intersections(&self, l: &Lotus) -> BTreeMap<VertexId, i64> {
        let mut out: BTreeMap<VertexId, i64> =
            (0..l.vertices.len()).filter(|&v| l.vertices[v].role == VertexRole::Exceptional).map(|v| (v, 0)).collect();
        let mut hit = |v: VertexId| {
            if let Some(w) = out.get_mut(&v) {
                *w -= 1;
            }
        };
        for piece in &self.pieces {
            match piece {
                Piece::Petal(p) => l.petals[*p].vertices().into_iter().for_each(&mut hit),
                Piece::Semipetal { kept, .. } => {
                    hit(kept.0);
                    hit(kept.1);
                }
                Piece::Axis { apex, .. } => hit(*apex),
                Piece::Segment { .. } => {}
            }
        }
        out
    }
}

pub fn truncate_lotus(l: &Lotus) -> TruncatedLotus {
    let removed: BTreeSet<VertexId> =
        (0..l.vertices.len()).filter(|&v| l.vertices[v].basic && l.vertices[v].role != VertexRole::Branch).collect();
    let mut pieces = Vec::new();
    for (k, p) in l.petals.iter().enumerate() {
        let (a, b) = p.base;
        pieces.push(match (removed.contains(&a), removed.contains(&b)) {
            (false, false) => Piece::Petal(k),
            (true, false) => Piece::Semipetal { petal: k, kept: (b, p.apex) },
            (false, true) => Piece::Semipetal { petal: k, kept: (a, p.apex) },
            (true, true) => Piece::Axis { petal: k, apex: p.apex },
        });
    }
    for (k, m) in l.membranes.iter().enumerate() {
        if m.kind == MembraneKind::Segment {
            pieces.push(Piece::Segment { membrane: k });
        }
    }
    let edges = l.lateral_edges().into_iter().filter(|(a, b)| !removed.contains(a) && !removed.contains(b)).collect();
    let truncated = TruncatedLotus { pieces, removed, dual: DualGraph { vertices: Vec::new(), edges: Vec::new() } };
    let weights = truncated.self_intersections(l);
    let dual = dual_from_edges(l, edges, &weights);
    TruncatedLotus { dual, ..truncated }
}

/// Abstract lotus `Δ(λ)`: the zigzag triangulation of `[A1, A2, V]` with its
/// oriented edges. Vertex `0` is `A1`, `1` is `A2`, `2` is `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractLotus {
    pub vertex_count: usize,
    /// Oriented edges, the base excluded.
    pub edges: Vec<(usize, usize)>,
    pub triangles: usize,
}

pub const A1: usize = 0;
pub const A2: usize = 1;
pub const V: usize = 2;

pub fn abstract_lotus(lambda: &Rat) -> Result<AbstractLotus> {
    let a: Vec<usize> = crate::lattice::cf_expand(lambda)?
        .terms
        .iter()
        .map(|t| usize::try_from(t).map_err(|_| Error::Domain("continued fraction term too large".into())))
        .collect::<Result<_>>()?;
    let k = a.len();
    let mut next = 3;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    // p[i + 1] is P_i for i in -1..=k
    let mut p = vec![A1, A2];
    for i in 1..k {
        p.push(if i == 1 && a[0] == 0 { A1 } else { fresh() });
    }
    p.push(V);
    let pt = |i: isize| p[(i + 1) as usize];
    let mut edges = Vec::new();
    let mut sides: [Vec<usize>; 2] = [vec![A1], vec![A2]];
    for i in 0..k as isize {
        let side = (i % 2) as usize;
        let pieces = a[i as usize];
        for _ in 1..pieces {
            let q = fresh();
            sides[side].push(q);
            edges.push((q, pt(i)));
        }
        if pt(i + 1) != *sides[side].last().expect("side starts at A_j") {
            sides[side].push(pt(i + 1));
        }
    }
    for side in sides.iter_mut() {
        if *side.last().expect("non-empty") != V {
            side.push(V);
        }
    }
    for side in &sides {
        for w in side.windows(2) {
            edges.push((w[1], w[0]));
        }
    }
    for i in 1..k as isize {
        let (from, to) = (pt(i), pt(i - 1));
        if !((from == A1 && to == A2) || (from == A2 && to == A1)) {
            edges.push((from, to));
        }
    }
    let vertex_count = next;
    Ok(AbstractLotus { vertex_count, edges, triangles: vertex_count - 2 })
}

impl AbstractLotus {
    /// Number of oriented paths from `V` to `target` avoiding the base.
    pub fn count_paths(&self, target: usize) -> Result<num_bigint::BigInt> {
        let mut memo: BTreeMap<usize, num_bigint::BigInt> = BTreeMap::new();
        let mut on_stack = BTreeSet::new();
        self.paths_from(V, target, &mut memo, &mut on_stack)
    }

    fn paths_from(
        &self,
        v: usize,
        target: usize,
        memo: &mut BTreeMap<usize, num_bigint::BigInt>,
        on_stack: &mut BTreeSet<usize>,
    ) -> Result<num_bigint::BigInt> {
        if v == target {
            return Ok(1.into());
        }
        if let Some(n) = memo.get(&v) {
            return Ok(n.clone());
        }
        if !on_stack.insert(v) {
            return Err(Error::Invariant("oriented cycle in abstract lotus".into()));
        }
        let mut total = num_bigint::BigInt::from(0);
        for &(_, w) in self.edges.iter().filter(|(f, _)| *f == v) {
            total += self.paths_from(w, target, memo, on_stack)?;
        }
        on_stack.remove(&v);
        memo.insert(v, total.clone());
        Ok(total)
    }
}
