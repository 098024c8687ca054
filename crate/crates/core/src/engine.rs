//! Toroidal pseudo-resolution by iterated Newton modifications.
//!
//! Each cross `(A, B)` of a smooth divisor `A` and a smooth curve `B` is a
//! toric chart. The strict transforms passing through the cross are kept as
//! renormalized series in those coordinates. The fan of the cross is the set
//! of their orders. Every ray gives an exceptional divisor `E_k`, and every
//! point of `E_k` met by at least one branch either stops the process or
//! opens a new cross `(E_k, L_j)`. Here `L_j` is an auxiliary curve built by
//! truncating the series of one branch through the point.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ewtree::{EwNode, EwTree};
use crate::lattice::{primitive_of_slope, ExtRat, Rat};
use crate::puiseux::{coincidence_order, renormalize_with_shift, Branch, PhasedRational, PuiseuxSeries};

/// How the auxiliary curve of a new cross is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AuxStrategy {
    /// Truncate the series of the first branch through the point just
    /// after the exponent of the divisor.
    #[default]
    Truncation,
}

impl AuxStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            AuxStrategy::Truncation => "truncation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossKind {
    /// A Newton modification was performed; `marks` are its divisors.
    Modified { fan: Vec<Rat>, marks: Vec<String> },
    /// A single branch meets `a` transversally here and the process stops.
    Terminal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cross {
    pub id: usize,
    pub level: usize,
    pub a: String,
    /// Auxiliary curve `L_j`, or a branch label when the cross is terminal
    /// or the auxiliary curve is one of the branches.
    pub b: String,
    pub host: Option<usize>,
    pub kind: CrossKind,
}

impl Cross {
    pub fn fan(&self) -> Option<&[Rat]> {
        match &self.kind {
            CrossKind::Modified { fan, .. } => Some(fan),
            CrossKind::Terminal => None,
        }
    }

    pub fn marks(&self) -> &[String] {
        match &self.kind {
            CrossKind::Modified { marks, .. } => marks,
            CrossKind::Terminal => &[],
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self.kind, CrossKind::Terminal)
    }
}

/// Exceptional divisor with the Eggers-Wall data of its point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub label: String,
    pub cross: usize,
    pub slope: Rat,
    pub exponent: Rat,
    pub index: BigInt,
    pub contact: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Auxiliary {
    pub label: String,
    pub series: PuiseuxSeries,
    /// Divisor on which the cross of this curve sits; `None` for `L1`.
    pub divisor: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub cross: usize,
    pub slope: Rat,
    pub divisor: String,
    pub conjugation: BigInt,
    pub renormalized: PuiseuxSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchTrace {
    pub label: String,
    pub steps: Vec<TraceStep>,
    /// Cross at whose end the branch sits.
    pub end_cross: usize,
}

impl BranchTrace {
    /// Number of crosses the branch passes through, the last one included.
    pub fn depth(&self) -> usize {
        self.steps.len() + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub cross: usize,
    pub between: (String, String),
    pub slopes: (ExtRat, ExtRat),
    pub determinant: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionRecord {
    pub strategy: AuxStrategy,
    pub branches: Vec<Branch>,
    pub crosses: Vec<Cross>,
    pub divisors: Vec<Divisor>,
    pub auxiliaries: Vec<Auxiliary>,
    pub traces: Vec<BranchTrace>,
}

impl ResolutionRecord {
    /// Number of levels at which Newton modifications were performed.
    pub fn levels(&self) -> usize {
        self.crosses.iter().filter(|c| !c.is_terminal()).map(|c| c.level).max().unwrap_or(0)
    }

    pub fn divisor(&self, label: &str) -> Option<&Divisor> {
        self.divisors.iter().find(|d| d.label == label)
    }

    pub fn modified_crosses(&self) -> impl Iterator<Item = &Cross> {
        self.crosses.iter().filter(|c| !c.is_terminal())
    }

    pub fn trace(&self, label: &str) -> Option<&BranchTrace> {
        self.traces.iter().find(|t| t.label == label)
    }

    /// Branches of `C` together with the auxiliary curves that differ from them.
    pub fn completed_branches(&self) -> Result<Vec<Branch>> {
        let mut out = self.branches.clone();
        for a in &self.auxiliaries {
            out.push(Branch::new(a.label.clone(), a.series.clone())?);
        }
        Ok(out)
    }

    /// Labels of the curves that close a trunk and are not branches of `C`.
    pub fn basic_labels(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.auxiliaries.iter().map(|a| a.label.clone()).collect();
        out.insert("L".into());
        out
    }
}

#[derive(Clone, Debug)]
struct Germ {
    branch: usize,
    current: PuiseuxSeries,
    original: PuiseuxSeries,
}

struct Pending {
    level: usize,
    a: String,
    b: String,
    host: Option<usize>,
    terminal: bool,
    scale: BigInt,
    exponent: Rat,
    contact: Rat,
    germs: Vec<Germ>,
}

fn is_reserved(label: &str) -> bool {
    let rest = match label.chars().next() {
        Some('L') | Some('E') | Some('R') => &label[1..],
        _ => return false,
    };
    rest.chars().all(|c| c.is_ascii_digit())
}

fn validate(branches: &[Branch]) -> Result<()> {
    if branches.is_empty() {
        return Err(Error::Domain("no branches".into()));
    }
    let mut seen = BTreeSet::new();
    for b in branches {
        if b.label.is_empty() || is_reserved(&b.label) {
            return Err(Error::Domain(format!("label `{}` is reserved", b.label)));
        }
        if !seen.insert(b.label.as_str()) {
            return Err(Error::Domain(format!("label `{}` used twice", b.label)));
        }
    }
    for (i, a) in branches.iter().enumerate() {
        for b in &branches[i + 1..] {
            if coincidence_order(&a.series, &b.series).is_infinite() {
                return Err(Error::DuplicateBranch(a.label.clone(), b.label.clone()));
            }
        }
    }
    Ok(())
}

pub fn pseudo_resolve(branches: &[Branch], strategy: AuxStrategy) -> Result<ResolutionRecord> {
    validate(branches)?;
    let mut rec = ResolutionRecord {
        strategy,
        branches: branches.to_vec(),
        crosses: Vec::new(),
        divisors: Vec::new(),
        auxiliaries: Vec::new(),
        traces: branches
            .iter()
            .map(|b| BranchTrace { label: b.label.clone(), steps: Vec::new(), end_cross: 0 })
            .collect(),
    };
    let mut germs: Vec<Germ> = Vec::new();
    let mut first_b = None;
    for (k, b) in branches.iter().enumerate() {
        if b.series.is_zero() {
            first_b = Some(b.label.clone());
        } else {
            germs.push(Germ { branch: k, current: b.series.clone(), original: b.series.clone() });
        }
    }
    let first_b = first_b.unwrap_or_else(|| {
        rec.auxiliaries.push(Auxiliary { label: "L1".into(), series: PuiseuxSeries::zero(), divisor: None });
        "L1".into()
    });
    let mut queue = VecDeque::from([Pending {
        level: 1,
        a: "L".into(),
        b: first_b,
        host: None,
        terminal: false,
        scale: BigInt::one(),
        exponent: Rat::zero(),
        contact: Rat::zero(),
        germs,
    }]);
    while let Some(p) = queue.pop_front() {
        let id = rec.crosses.len();
        if let Some(k) = rec.branches.iter().position(|b| b.label == p.b) {
            rec.traces[k].end_cross = id;
        }
        if p.terminal {
            rec.crosses.push(Cross { id, level: p.level, a: p.a, b: p.b, host: p.host, kind: CrossKind::Terminal });
        } else {
            process(&mut rec, p, &mut queue)?;
        }
    }
    Ok(rec)
}

fn process(rec: &mut ResolutionRecord, p: Pending, queue: &mut VecDeque<Pending>) -> Result<()> {
    let id = rec.crosses.len();
    let mut rays: BTreeMap<Rat, Vec<Germ>> = BTreeMap::new();
    for g in p.germs {
        let o = g.current.order().finite().cloned().ok_or_else(|| Error::Invariant("empty active germ".into()))?;
        rays.entry(o).or_default().push(g);
    }
    let fan: Vec<Rat> = rays.keys().cloned().collect();
    let mut marks = Vec::new();
    let scale_r = Rat::from_integer(p.scale.clone());
    for s in &fan {
        let label = format!("E{}", rec.divisors.len() + 1);
        rec.divisors.push(Divisor {
            label: label.clone(),
            cross: id,
            slope: s.clone(),
            exponent: &p.exponent + s / &scale_r,
            index: p.scale.clone(),
            contact: &p.contact + s / (&scale_r * &scale_r),
        });
        marks.push(label);
    }
    rec.crosses.push(Cross {
        id,
        level: p.level,
        a: p.a,
        b: p.b,
        host: p.host,
        kind: CrossKind::Modified { fan, marks: marks.clone() },
    });

    for ((slope, ray_germs), label) in rays.into_iter().zip(marks) {
        let div = rec.divisor(&label).expect("divisor just created").clone();
        let c = slope.denom().clone();
        // points of the divisor: leading coefficients up to c-th roots of unity
        let mut groups: Vec<(PhasedRational, Vec<Germ>)> = Vec::new();
        for g in ray_germs {
            let lead = g.current.leading().expect("active germ").1.pow(&c)?;
            match groups.iter_mut().find(|(l, _)| *l == lead) {
                Some((_, v)) => v.push(g),
                None => groups.push((lead, vec![g])),
            }
        }
        for (_, members) in groups {
            let alpha = members[0].current.leading().expect("active germ").1.clone();
            let mut next = Vec::new();
            for g in members {
                let (current, j) = renormalize_with_shift(&g.current, &slope, &alpha)?;
                // a conjugation of the chart series is a larger one of the original
                let original = g.original.conjugate(&(&j * &p.scale));
                rec.traces[g.branch].steps.push(TraceStep {
                    cross: id,
                    slope: slope.clone(),
                    divisor: label.clone(),
                    conjugation: j,
                    renormalized: current.clone(),
                });
                next.push(Germ { branch: g.branch, current, original });
            }
            let mut pending = Pending {
                level: p.level + 1,
                a: label.clone(),
                b: String::new(),
                host: Some(id),
                terminal: false,
                scale: &p.scale * &c,
                exponent: div.exponent.clone(),
                contact: div.contact.clone(),
                germs: Vec::new(),
            };
            if next.len() == 1 && next[0].current.has_integer_exponents() {
                pending.terminal = true;
                pending.b = rec.branches[next[0].branch].label.clone();
                queue.push_back(pending);
                continue;
            }
            pending.b = match next.iter().find(|g| g.current.is_empty()) {
                // the truncation is this branch itself
                Some(g) => rec.branches[g.branch].label.clone(),
                None => {
                    let l = format!("L{}", rec.auxiliaries.len() + 1);
                    let series = match rec.strategy {
                        AuxStrategy::Truncation => next[0].original.truncate(&div.exponent),
                    };
                    rec.auxiliaries.push(Auxiliary { label: l.clone(), series, divisor: Some(label.clone()) });
                    l
                }
            };
            pending.germs = next.into_iter().filter(|g| !g.current.is_empty()).collect();
            queue.push_back(pending);
        }
    }
    Ok(())
}

/// Consecutive rays of a cross fan (with `0` and `∞` added) that do not
/// span a regular cone. Each one is a singular point of the surface.
pub fn singular_points(rec: &ResolutionRecord) -> Result<Vec<SingularPoint>> {
    let mut out = Vec::new();
    for cr in rec.modified_crosses() {
        let mut rays = vec![(cr.a.clone(), ExtRat::Finite(Rat::zero()))];
        for (s, m) in cr.fan().unwrap_or(&[]).iter().zip(cr.marks()) {
            rays.push((m.clone(), ExtRat::Finite(s.clone())));
        }
        rays.push((cr.b.clone(), ExtRat::Infinite));
        for w in rays.windows(2) {
            let u = primitive_of_slope(&w[0].1)?;
            let v = primitive_of_slope(&w[1].1)?;
            let det = u.det(&v);
            if !det.is_one() {
                out.push(SingularPoint {
                    cross: cr.id,
                    between: (w[0].0.clone(), w[1].0.clone()),
                    slopes: (w[0].1.clone(), w[1].1.clone()),
                    determinant: det,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanNodeKind {
    Root,
    Divisor,
    Auxiliary,
    Branch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanNode {
    pub label: String,
    pub parent: Option<usize>,
    pub kind: FanNodeKind,
    /// Cross whose trunk contains the node (the root lies on the first).
    pub cross: usize,
    /// Slope of the node on its trunk.
    pub slope: ExtRat,
}

/// Fan tree: trunks of all crosses glued along the divisors that host them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanTree {
    pub nodes: Vec<FanNode>,
}

impl FanTree {
    pub fn find(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.nodes.iter().enumerate().filter_map(|(k, n)| n.parent.map(|p| (p, k))).collect()
    }

    pub fn children(&self, id: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&k| self.nodes[k].parent == Some(id)).collect()
    }

    /// Labels of the leaves below `id`, sorted.
    pub fn leaves_below(&self, id: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            let kids = self.children(n);
            if kids.is_empty() {
                out.push(self.nodes[n].label.clone());
            }
            stack.extend(kids);
        }
        out.sort();
        out
    }
}

pub fn fan_tree(rec: &ResolutionRecord) -> FanTree {
    let branch_labels: BTreeSet<&str> = rec.branches.iter().map(|b| b.label.as_str()).collect();
    let mut nodes = vec![FanNode {
        label: "L".into(),
        parent: None,
        kind: FanNodeKind::Root,
        cross: 0,
        slope: ExtRat::Finite(Rat::zero()),
    }];
    let mut by_label: BTreeMap<String, usize> = BTreeMap::from([("L".to_string(), 0)]);
    for cr in &rec.crosses {
        let mut prev = by_label[&cr.a];
        for (s, m) in cr.fan().unwrap_or(&[]).iter().zip(cr.marks()) {
            nodes.push(FanNode {
                label: m.clone(),
                parent: Some(prev),
                kind: FanNodeKind::Divisor,
                cross: cr.id,
                slope: ExtRat::Finite(s.clone()),
            });
            prev = nodes.len() - 1;
            by_label.insert(m.clone(), prev);
        }
        let kind = if branch_labels.contains(cr.b.as_str()) { FanNodeKind::Branch } else { FanNodeKind::Auxiliary };
        nodes.push(FanNode { label: cr.b.clone(), parent: Some(prev), kind, cross: cr.id, slope: ExtRat::Infinite });
        by_label.insert(cr.b.clone(), nodes.len() - 1);
    }
    FanTree { nodes }
}

/// Eggers-Wall tree of the completed curve, computed from the fan tree
/// alone: along a trunk starting at `A`, a point of slope `s` has
/// `i = i(A)·den(slope(A))`, `e = e(A) + s / i` and `c = c(A) + s / i²`.
pub fn ew_from_fan_tree(ft: &FanTree) -> EwTree {
    let n = ft.nodes.len();
    // (index on the trunk, e, c) of every node, in creation order
    let mut data: Vec<(BigInt, ExtRat, ExtRat)> = Vec::with_capacity(n);
    let mut trunk_scale: BTreeMap<usize, (BigInt, Rat, Rat)> = BTreeMap::new();
    for node in &ft.nodes {
        if node.parent.is_none() {
            data.push((BigInt::one(), ExtRat::Finite(Rat::zero()), ExtRat::Finite(Rat::zero())));
            trunk_scale.insert(node.cross, (BigInt::one(), Rat::zero(), Rat::zero()));
            continue;
        }
        let (scale, e0, c0) = trunk_scale
            .entry(node.cross)
            .or_insert_with(|| {
                // the trunk starts at the parent of its first node
                let a = node.parent.expect("non-root");
                let (ia, ea, ca) = &data[a];
                let den = ft.nodes[a].slope.finite().map_or(BigInt::one(), |s| s.denom().clone());
                (ia * den, ea.finite().expect("finite").clone(), ca.finite().expect("finite").clone())
            })
            .clone();
        let (e, c) = match &node.slope {
            ExtRat::Infinite => (ExtRat::Infinite, ExtRat::Infinite),
            ExtRat::Finite(s) => {
                let sr = Rat::from_integer(scale.clone());
                (ExtRat::Finite(&e0 + s / &sr), ExtRat::Finite(&c0 + s / (&sr * &sr)))
            }
        };
        data.push((scale, e, c));
    }
    let leaves: Vec<usize> = (0..n).filter(|&k| ft.children(k).is_empty()).collect();
    let branch_labels: Vec<String> = leaves.iter().map(|&k| ft.nodes[k].label.clone()).collect();
    let nodes = (0..n)
        .map(|k| {
            let below = ft.leaves_below(k);
            let cluster = (0..leaves.len()).filter(|&b| below.contains(&branch_labels[b])).collect();
            let (index, exponent, contact) = data[k].clone();
            EwNode {
                parent: ft.nodes[k].parent,
                exponent,
                index,
                contact,
                label: Some(ft.nodes[k].label.clone()),
                cluster,
            }
        })
        .collect();
    EwTree { nodes, branch_labels, leaves }
}
