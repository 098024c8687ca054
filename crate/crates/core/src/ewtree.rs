//! Eggers-Wall trees relative to the reference branch `L = Z(x)`.
//!
//! Every node carries the exponent `e`, the index `i` and the contact
//! complexity `c` of the point it represents. The root is `L` itself with
//! `e = 0`, `i = 1`, `c = 0`; leaves sit at `e = ∞`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{ExtRat, Rat};
use crate::puiseux::{characteristic_exponents, coincidence_order, Branch};

pub use crate::puiseux::multiplicity;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EwNode {
    pub parent: Option<usize>,
    pub exponent: ExtRat,
    pub index: BigInt,
    pub contact: ExtRat,
    pub label: Option<String>,
    /// Branches whose path from the root passes through this node, sorted.
    pub cluster: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EwTree {
    pub(crate) nodes: Vec<EwNode>,
    pub(crate) branch_labels: Vec<String>,
    pub(crate) leaves: Vec<usize>,
}

/// Order-independent description of a node: exponent and the labels of the
/// branches through it.
pub type NodeKey = (ExtRat, Vec<String>);

impl EwTree {
    pub fn root(&self) -> usize {
        0
    }

    pub fn nodes(&self) -> &[EwNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &EwNode {
        &self.nodes[id]
    }

    pub fn branch_labels(&self) -> &[String] {
        &self.branch_labels
    }

    pub fn leaf(&self, label: &str) -> Option<usize> {
        self.branch_labels.iter().position(|l| l == label).map(|i| self.leaves[i])
    }

    pub fn children(&self, id: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&k| self.nodes[k].parent == Some(id)).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.nodes.iter().enumerate().filter_map(|(k, n)| n.parent.map(|p| (p, k))).collect()
    }

    pub fn set_label(&mut self, id: usize, label: impl Into<String>) {
        self.nodes[id].label = Some(label.into());
    }

    pub fn ancestors(&self, id: usize) -> Vec<usize> {
        let mut out = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            out.push(p);
            cur = p;
        }
        out
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let up: BTreeSet<usize> = self.ancestors(a).into_iter().collect();
        self.ancestors(b).into_iter().find(|x| up.contains(x)).expect("common root")
    }

    /// Marked points: the root, the leaves, and every node where the index
    /// jumps or the tree ramifies.
    pub fn marked_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&k| {
                let kids = self.children(k);
                let n = &self.nodes[k];
                n.parent.is_none()
                    || kids.is_empty()
                    || kids.len() > 1
                    || kids.iter().any(|&c| self.nodes[c].index != n.index)
            })
            .collect()
    }

    pub fn key(&self, id: usize) -> NodeKey {
        let n = &self.nodes[id];
        let mut labels: Vec<String> = n.cluster.iter().map(|&b| self.branch_labels[b].clone()).collect();
        labels.sort();
        (n.exponent.clone(), labels)
    }

    /// Canonical description, independent of the order of construction:
    /// `(key, index, contact, parent key)` for every node.
    pub fn signature(&self) -> BTreeSet<(NodeKey, BigInt, ExtRat, Option<NodeKey>)> {
        (0..self.nodes.len())
            .map(|k| {
                let n = &self.nodes[k];
                (self.key(k), n.index.clone(), n.contact.clone(), n.parent.map(|p| self.key(p)))
            })
            .collect()
    }

    /// `c(A ∧ B)·i_A·i_B` for two leaves.
    pub fn intersection_of_leaves(&self, a: usize, b: usize) -> Result<BigInt> {
        if a == b {
            return Err(Error::Domain("self-intersection of a branch".into()));
        }
        let m = self.meet(a, b);
        let c = self.nodes[m]
            .contact
            .finite()
            .ok_or_else(|| Error::Invariant("meet of distinct leaves at infinity".into()))?;
        let v = c * Rat::from_integer(&self.nodes[a].index * &self.nodes[b].index);
        if !v.is_integer() {
            return Err(Error::Invariant(format!("non-integral intersection number {v}")));
        }
        Ok(v.to_integer())
    }
}

fn lcm_of_denominators<'a>(es: impl Iterator<Item = &'a Rat>) -> BigInt {
    es.fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
}

/// Eggers-Wall tree of a finite set of distinct branches.
pub fn build_ew_tree(branches: &[Branch]) -> Result<EwTree> {
    if branches.is_empty() {
        return Err(Error::Domain("no branches".into()));
    }
    let n = branches.len();
    let mut seen = BTreeSet::new();
    for b in branches {
        if !seen.insert(b.label.as_str()) {
            return Err(Error::Domain(format!("label `{}` used twice", b.label)));
        }
    }
    let mut k = vec![vec![ExtRat::Infinite; n]; n];
    for l in 0..n {
        for m in l + 1..n {
            let v = coincidence_order(&branches[l].series, &branches[m].series);
            if v.is_infinite() {
                return Err(Error::DuplicateBranch(branches[l].label.clone(), branches[m].label.clone()));
            }
            k[l][m] = v.clone();
            k[m][l] = v;
        }
    }
    let mut nodes = vec![EwNode {
        parent: None,
        exponent: ExtRat::Finite(Rat::zero()),
        index: BigInt::one(),
        contact: ExtRat::Finite(Rat::zero()),
        label: Some("L".into()),
        cluster: (0..n).collect(),
    }];
    let mut ids: BTreeMap<(Rat, Vec<usize>), usize> = BTreeMap::new();
    let mut leaves = Vec::with_capacity(n);
    for l in 0..n {
        let ch = characteristic_exponents(&branches[l].series);
        let mut vertices: BTreeSet<Rat> = ch.iter().cloned().collect();
        vertices.extend(k[l].iter().filter_map(|v| v.finite().cloned()));
        let mut prev = 0;
        for e in vertices {
            let cluster: Vec<usize> = (0..n).filter(|&m| k[l][m] >= ExtRat::Finite(e.clone())).collect();
            let key = (e.clone(), cluster);
            prev = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    let index = lcm_of_denominators(ch.iter().filter(|x| **x < e));
                    let p = &nodes[prev];
                    let (pe, pc) = (p.exponent.finite().expect("finite"), p.contact.finite().expect("finite"));
                    let contact = pc + (&e - pe) / Rat::from_integer(index.clone());
                    nodes.push(EwNode {
                        parent: Some(prev),
                        exponent: ExtRat::Finite(e),
                        index,
                        contact: ExtRat::Finite(contact),
                        label: None,
                        cluster: key.1.clone(),
                    });
                    ids.insert(key, nodes.len() - 1);
                    nodes.len() - 1
                }
            };
        }
        nodes.push(EwNode {
            parent: Some(prev),
            exponent: ExtRat::Infinite,
            index: branches[l].index(),
            contact: ExtRat::Infinite,
            label: Some(branches[l].label.clone()),
            cluster: vec![l],
        });
        leaves.push(nodes.len() - 1);
    }
    Ok(EwTree { nodes, branch_labels: branches.iter().map(|b| b.label.clone()).collect(), leaves })
}

pub fn contact(t: &EwTree, node: usize) -> ExtRat {
    t.nodes[node].contact.clone()
}

/// Intersection number of two distinct branches, read off their tree.
pub fn intersection_number(a: &Branch, b: &Branch) -> Result<BigInt> {
    let mut b = b.clone();
    if b.label == a.label {
        b.label.push('\'');
    }
    let t = build_ew_tree(&[a.clone(), b])?;
    t.intersection_of_leaves(t.leaves[0], t.leaves[1])
}
