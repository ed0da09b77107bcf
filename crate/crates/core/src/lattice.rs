//! Finite lattices of subspaces.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poset::{FiniteLattice, LatticeAutomorphism, LatticeShape};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub const DEFAULT_NODE_CAP: usize = 4096;

/// A finite family of subspaces containing `{0}` and the whole space, closed
/// under meet and join. Nodes are sorted by dimension, then by canonical basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceLattice<F> {
    ambient: usize,
    nodes: Vec<Subspace<F>>,
    order: FiniteLattice,
}

/// Structural flags of a node list, used to validate lattices read from input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LatticeFlags {
    pub contains_zero: bool,
    pub contains_full: bool,
    pub is_meet_join_closed: bool,
}

impl LatticeFlags {
    pub fn is_lattice(&self) -> bool {
        self.contains_zero && self.contains_full && self.is_meet_join_closed
    }
}

fn common_ambient<F: Scalar>(family: &[Subspace<F>]) -> Result<usize> {
    let first = family.first().ok_or_else(|| Error::Precondition("empty family".into()))?;
    for m in family {
        if m.ambient() != first.ambient() {
            return Err(Error::AmbientMismatch { left: first.ambient(), right: m.ambient() });
        }
    }
    Ok(first.ambient())
}

/// Flags for an arbitrary node list.
pub fn lattice_flags<F: Scalar>(nodes: &[Subspace<F>]) -> Result<LatticeFlags> {
    let n = common_ambient(nodes)?;
    let set: BTreeSet<&Subspace<F>> = nodes.iter().collect();
    let mut closed = true;
    'outer: for a in nodes {
        for b in nodes {
            if !set.contains(&a.meet(b)?) || !set.contains(&a.join(b)?) {
                closed = false;
                break 'outer;
            }
        }
    }
    Ok(LatticeFlags {
        contains_zero: set.contains(&Subspace::zero(n)),
        contains_full: set.contains(&Subspace::full(n)),
        is_meet_join_closed: closed,
    })
}

impl<F: Scalar> SubspaceLattice<F> {
    /// Smallest subspace lattice containing `family`.
    pub fn generate_closure(family: &[Subspace<F>]) -> Result<Self> {
        Self::generate_closure_with_cap(family, DEFAULT_NODE_CAP)
    }

    pub fn generate_closure_with_cap(family: &[Subspace<F>], cap: usize) -> Result<Self> {
        let n = common_ambient(family)?;
        let mut seen: BTreeSet<Subspace<F>> = BTreeSet::new();
        let mut nodes = Vec::new();
        let seeds = [Subspace::zero(n), Subspace::full(n)];
        for m in seeds.iter().chain(family) {
            if seen.insert(m.clone()) {
                nodes.push(m.clone());
            }
        }
        if nodes.len() > cap {
            return Err(Error::NodeCapExceeded { cap });
        }
        // Each node is combined with every earlier one exactly once, including
        // nodes discovered along the way, so the loop ends at the fixpoint.
        let mut i = 0;
        while i < nodes.len() {
            for k in 0..i {
                for c in [nodes[i].meet(&nodes[k])?, nodes[i].join(&nodes[k])?] {
                    if seen.insert(c.clone()) {
                        nodes.push(c);
                        if nodes.len() > cap {
                            return Err(Error::NodeCapExceeded { cap });
                        }
                    }
                }
            }
            i += 1;
        }
        Ok(Self::from_sorted(n, seen.into_iter().collect()))
    }

    /// Wraps an explicit node list, which must already be a lattice.
    pub fn from_nodes(nodes: Vec<Subspace<F>>) -> Result<Self> {
        let n = common_ambient(&nodes)?;
        let flags = lattice_flags(&nodes)?;
        if !flags.is_lattice() {
            return Err(Error::Precondition(format!("node list is not a subspace lattice: {flags:?}")));
        }
        let set: BTreeSet<Subspace<F>> = nodes.into_iter().collect();
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(ambient: usize, nodes: Vec<Subspace<F>>) -> Self {
        let leq = nodes
            .iter()
            .map(|a| nodes.iter().map(|b| b.contains(a).expect("shared ambient")).collect())
            .collect();
        let order = FiniteLattice::from_order(leq).expect("containment is a partial order");
        Self { ambient, nodes, order }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn nodes(&self) -> &[Subspace<F>] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Subspace<F> {
        &self.nodes[i]
    }

    pub fn index_of(&self, m: &Subspace<F>) -> Option<usize> {
        self.nodes.binary_search(m).ok()
    }

    pub fn contains(&self, m: &Subspace<F>) -> bool {
        self.index_of(m).is_some()
    }

    pub fn order(&self) -> &FiniteLattice {
        &self.order
    }

    pub fn flags(&self) -> LatticeFlags {
        lattice_flags(&self.nodes).expect("nodes share an ambient")
    }

    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.order.hasse_edges()
    }

    pub fn automorphisms(&self) -> Vec<LatticeAutomorphism> {
        self.order.automorphisms()
    }

    pub fn classify(&self) -> LatticeShape {
        self.order.classify()
    }

    /// Annihilators of the nodes, as a lattice in the dual space.
    pub fn dual_lattice(&self) -> Self {
        let nodes: BTreeSet<Subspace<F>> = self.nodes.iter().map(Subspace::annihilator).collect();
        Self::from_sorted(self.ambient, nodes.into_iter().collect())
    }

    /// Index map `i ↦ j` with `node(j)` of `dual` the annihilator of `node(i)`.
    pub fn dual_index_map(&self, dual: &Self) -> Option<Vec<usize>> {
        self.nodes.iter().map(|m| dual.index_of(&m.annihilator())).collect()
    }

    /// Hasse diagram in DOT, nodes labeled by index and dimension.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
        for (i, m) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{i}: dim {}\"];\n", m.dim()));
        }
        let mut edges = self.hasse_edges();
        edges.sort_unstable();
        for (a, b) in edges {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "nodes": self.nodes.iter().map(Subspace::to_json).collect::<Vec<_>>(),
        })
    }

    /// Reads `{"ambient": n, "nodes": [...]}`. Node lists that are not closed
    /// are closed when `close` is set and rejected otherwise.
    pub fn from_json(v: &Value, close: bool) -> Result<Self> {
        let ambient = v
            .get("ambient")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("lattice needs an integer \"ambient\"".into()))? as usize;
        let nodes = v
            .get("nodes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("lattice needs a \"nodes\" array".into()))?
            .iter()
            .map(Subspace::from_json)
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = nodes.iter().find(|m| m.ambient() != ambient) {
            return Err(Error::AmbientMismatch { left: ambient, right: bad.ambient() });
        }
        let nodes = if nodes.is_empty() { vec![Subspace::zero(ambient)] } else { nodes };
        if close {
            Self::generate_closure(&nodes)
        } else {
            Self::from_nodes(nodes)
        }
    }
}
