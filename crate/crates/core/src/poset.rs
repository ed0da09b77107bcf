//! Abstract finite lattices given by their order relation.
//!
//! Shapes such as multi-chains with chains of different lengths contain a
//! pentagon and so have no realization as subspace lattices in finite
//! dimension; the order-theoretic facts about them (automorphism groups,
//! classification) are computed here directly.

use std::collections::BTreeMap;
use std::fmt;


use crate::error::{Error, Result};

/// Partial order on `0..n`, `leq[i][j]` meaning `i ≤ j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteLattice {
    leq: Vec<Vec<bool>>,
}

/// A node permutation preserving the order in both directions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeAutomorphism {
    pub perm: Vec<usize>,
}

impl LatticeAutomorphism {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }
}

/// Structural classification of a finite lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LatticeShape {
    /// Only the bottom and top.
    Trivial,
    /// Totally ordered with `nontrivial ≥ 1` elements strictly between bottom and top.
    Chain { nontrivial: usize },
    Diamond,
    DoubleTriangle,
    /// Medial lattice with `atoms ≥ 4` pairwise incomparable non-trivial elements.
    Medial { atoms: usize },
    /// Chains glued at bottom and top; lengths sorted in decreasing order, at least one above 1.
    MultiChain { lengths: Vec<usize> },
    Other,
}

impl LatticeShape {
    pub fn name(&self) -> String {
        match self {
            Self::Trivial => "trivial".into(),
            Self::Chain { .. } => "chain".into(),
            Self::Diamond => "diamond".into(),
            Self::DoubleTriangle => "double_triangle".into(),
            Self::Medial { atoms } => format!("medial({atoms})"),
            Self::MultiChain { lengths } => multi_chain_tag(lengths),
            Self::Other => "other".into(),
        }
    }

    /// Every tag that applies, most specific first.
    pub fn tags(&self) -> Vec<String> {
        match self {
            Self::Trivial => vec!["trivial".into(), "well_ordered_nest".into()],
            Self::Chain { .. } => vec!["chain".into(), "well_ordered_nest".into()],
            Self::Diamond => vec!["diamond".into(), "medial(2)".into(), multi_chain_tag(&[1, 1])],
            Self::DoubleTriangle => {
                vec!["double_triangle".into(), "medial(3)".into(), multi_chain_tag(&[1, 1, 1])]
            }
            Self::Medial { atoms } => vec![format!("medial({atoms})"), multi_chain_tag(&vec![1; *atoms])],
            Self::MultiChain { lengths } => vec![multi_chain_tag(lengths)],
            Self::Other => vec!["other".into()],
        }
    }

    /// Chain lengths `q₁ ≥ … ≥ qₙ` when the lattice is a multi-chain (medial included).
    pub fn chain_lengths(&self) -> Option<Vec<usize>> {
        match self {
            Self::Diamond => Some(vec![1, 1]),
            Self::DoubleTriangle => Some(vec![1, 1, 1]),
            Self::Medial { atoms } => Some(vec![1; *atoms]),
            Self::MultiChain { lengths } => Some(lengths.clone()),
            _ => None,
        }
    }
}

fn multi_chain_tag(lengths: &[usize]) -> String {
    let parts: Vec<String> = lengths.iter().map(ToString::to_string).collect();
    format!("multi_chain({})", parts.join(","))
}

impl fmt::Display for LatticeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FiniteLattice {
    pub fn from_order(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("order relation must be square".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::Precondition(format!("order not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Precondition(format!("order not antisymmetric at ({i},{j})")));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::Precondition(format!("order not transitive at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(Self { leq })
    }

    /// Builds a lattice from its covering relation.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(leq)
    }

    /// `0 < a₁ < … < a_q < 1`.
    pub fn chain(nontrivial: usize) -> Self {
        Self::multi_chain(&[nontrivial])
    }

    /// Chains with the given numbers of non-trivial elements, glued at bottom
    /// (node 0) and top (last node).
    pub fn multi_chain(lengths: &[usize]) -> Self {
        let inner: usize = lengths.iter().sum();
        let top = inner + 1;
        let mut covers = Vec::new();
        let mut next = 1;
        for &q in lengths {
            if q == 0 {
                continue;
            }
            covers.push((0, next));
            for k in 0..q - 1 {
                covers.push((next + k, next + k + 1));
            }
            covers.push((next + q - 1, top));
            next += q;
        }
        if inner == 0 {
            covers.push((0, 1));
        }
        Self::from_covers(top + 1, &covers).expect("multi-chain covers form a lattice")
    }

    pub fn medial(atoms: usize) -> Self {
        Self::multi_chain(&vec![1; atoms])
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[i][j]))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[j][i]))
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] || self.leq[j][i]
    }

    /// The order-reversed lattice on the same node indices.
    pub fn dual(&self) -> Self {
        let n = self.len();
        Self { leq: (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect() }
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]);
                if !between {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Length of the longest chain from any minimal element up to each node.
    fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| self.leq[j][i]).count());
        let mut h = vec![0; n];
        for &i in &order {
            h[i] = (0..n).filter(|&j| j != i && self.leq[j][i]).map(|j| h[j] + 1).max().unwrap_or(0);
        }
        h
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.len();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..n).all(|i| (0..n).all(|j| self.leq[i][j] == self.leq[perm[i]][perm[j]]))
    }

    /// All order automorphisms, sorted, identity first.
    pub fn automorphisms(&self) -> Vec<LatticeAutomorphism> {
        let n = self.len();
        let heights = self.heights();
        let below: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| self.leq[j][i]).count()).collect();
        let above: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| self.leq[i][j]).count()).collect();
        let signature: Vec<(usize, usize, usize)> = (0..n).map(|i| (heights[i], below[i], above[i])).collect();

        let mut out = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_automorphism(0, &signature, &mut image, &mut used, &mut out);
        out.sort();
        out
    }

    fn extend_automorphism(
        &self,
        i: usize,
        signature: &[(usize, usize, usize)],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<LatticeAutomorphism>,
    ) {
        let n = self.len();
        if i == n {
            out.push(LatticeAutomorphism { perm: image.clone() });
            return;
        }
        for j in 0..n {
            if used[j] || signature[i] != signature[j] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                self.leq[k][i] == self.leq[image[k]][j] && self.leq[i][k] == self.leq[j][image[k]]
            });
            if !consistent {
                continue;
            }
            image[i] = j;
            used[j] = true;
            self.extend_automorphism(i + 1, signature, image, used, out);
            used[j] = false;
        }
        image[i] = usize::MAX;
    }

    pub fn classify(&self) -> LatticeShape {
        let (Some(bottom), Some(top)) = (self.bottom(), self.top()) else {
            return LatticeShape::Other;
        };
        let inner: Vec<usize> = (0..self.len()).filter(|&i| i != bottom && i != top).collect();
        if inner.is_empty() {
            return LatticeShape::Trivial;
        }
        let total = inner.iter().all(|&a| inner.iter().all(|&b| self.comparable(a, b)));
        if total {
            return LatticeShape::Chain { nontrivial: inner.len() };
        }

        // Components of the comparability graph on the non-trivial elements.
        let mut component: BTreeMap<usize, usize> = BTreeMap::new();
        let mut sizes = Vec::new();
        for &start in &inner {
            if component.contains_key(&start) {
                continue;
            }
            let id = sizes.len();
            let mut stack = vec![start];
            component.insert(start, id);
            let mut size = 0;
            while let Some(a) = stack.pop() {
                size += 1;
                for &b in &inner {
                    if !component.contains_key(&b) && self.comparable(a, b) {
                        component.insert(b, id);
                        stack.push(b);
                    }
                }
            }
            sizes.push(size);
        }
        let chains_ok = inner.iter().all(|&a| {
            inner.iter().all(|&b| component[&a] != component[&b] || self.comparable(a, b))
        });
        if !chains_ok || sizes.len() < 2 {
            return LatticeShape::Other;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        if sizes.iter().all(|&q| q == 1) {
            return match sizes.len() {
                2 => LatticeShape::Diamond,
                3 => LatticeShape::DoubleTriangle,
                k => LatticeShape::Medial { atoms: k },
            };
        }
        LatticeShape::MultiChain { lengths: sizes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(FiniteLattice::chain(1).classify(), LatticeShape::Chain { nontrivial: 1 });
        assert_eq!(FiniteLattice::chain(0).classify(), LatticeShape::Trivial);
        assert_eq!(FiniteLattice::medial(2).classify(), LatticeShape::Diamond);
        assert_eq!(FiniteLattice::medial(3).classify(), LatticeShape::DoubleTriangle);
        assert_eq!(FiniteLattice::medial(5).classify(), LatticeShape::Medial { atoms: 5 });
        assert_eq!(
            FiniteLattice::multi_chain(&[1, 2]).classify(),
            LatticeShape::MultiChain { lengths: vec![2, 1] }
        );
        assert!(LatticeShape::Diamond.tags().contains(&"medial(2)".to_string()));
        assert!(LatticeShape::DoubleTriangle.tags().contains(&"medial(3)".to_string()));
        assert!(LatticeShape::Chain { nontrivial: 3 }.tags().contains(&"well_ordered_nest".to_string()));
    }

    #[test]
    fn non_multichain_is_other() {
        // Boolean lattice 2³ (cube): atoms below pairwise joins.
        let covers = [
            (0, 1), (0, 2), (0, 3),
            (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6),
            (4, 7), (5, 7), (6, 7),
        ];
        let cube = FiniteLattice::from_covers(8, &covers).unwrap();
        assert_eq!(cube.classify(), LatticeShape::Other);
        assert_eq!(cube.automorphisms().len(), 6);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteLattice::chain(1).automorphisms(), vec![LatticeAutomorphism::identity(3)]);
        assert_eq!(FiniteLattice::medial(2).automorphisms().len(), 2);
        assert_eq!(FiniteLattice::medial(3).automorphisms().len(), 6);
        assert_eq!(FiniteLattice::medial(4).automorphisms().len(), 24);
        assert_eq!(FiniteLattice::multi_chain(&[2, 2]).automorphisms().len(), 2);
        assert_eq!(FiniteLattice::multi_chain(&[3, 1]).automorphisms().len(), 1);
    }

    #[test]
    fn hasse_counts() {
        assert_eq!(FiniteLattice::chain(1).hasse_edges().len(), 2);
        assert_eq!(FiniteLattice::medial(2).hasse_edges().len(), 4);
        assert_eq!(FiniteLattice::medial(3).hasse_edges().len(), 6);
    }

    #[test]
    fn rejects_non_orders() {
        assert!(FiniteLattice::from_order(vec![vec![true, true], vec![true, true]]).is_err());
        assert!(FiniteLattice::from_order(vec![vec![false]]).is_err());
    }

    #[test]
    fn automorphism_algebra() {
        let a = LatticeAutomorphism { perm: vec![0, 2, 3, 1, 4] };
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.compose(&a).compose(&a), LatticeAutomorphism::identity(5));
    }
}
