//! X-trees, X-forests, FLATTEN and decomposition through a flattened tree.

use std::ops::Range;

use super::{Kind, NodeId, PqTree};
use crate::error::{Error, Result};
use crate::perm::{Permutation, SpecSet};

/// Where the leaves of a set `X` sit inside a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XStructure {
    /// The leaves of the subtree at this P-node are exactly `X`.
    Tree(NodeId),
    /// The children in `children` (0-based, half-open) of this Q-node carry
    /// exactly the leaves of `X`.
    Forest { parent: NodeId, children: Range<usize> },
}

fn violated(message: impl Into<String>) -> Error {
    Error::NotConsecutive(message.into())
}

impl PqTree {
    /// Finds the X-tree or X-forest below the youngest common ancestor of
    /// the leaves of `x`. Fails when no such structure exists, which is the
    /// case iff some consistent frontier splits `x`.
    pub fn locate_x_structure(&self, x: &SpecSet) -> Result<XStructure> {
        assert_eq!(x.universe(), self.n, "degree mismatch");
        let k = x.len();
        if k < 2 {
            return Err(violated("the set needs at least two elements"));
        }
        let mut marked = vec![false; self.n];
        for &v in x.raw() {
            marked[v] = true;
        }
        let (size, hits) = self.counts(&marked);
        let mut anc = self.root;
        while let Some(&c) = self.node(anc).children.iter().find(|c| hits[c.0] == k) {
            anc = c;
        }
        let node = self.node(anc);
        match node.kind {
            Kind::Leaf(_) => unreachable!("two or more leaves meet at an internal node"),
            Kind::P if size[anc.0] == k => Ok(XStructure::Tree(anc)),
            Kind::P => Err(violated(format!("{x} shares a P-node with other leaves"))),
            Kind::Q => {
                let touched: Vec<usize> = (0..node.children.len())
                    .filter(|&i| hits[node.children[i].0] > 0)
                    .collect();
                let (a, b) = (touched[0], touched[touched.len() - 1]);
                let block_ok =
                    b - a + 1 == touched.len() && node.children[a..=b].iter().all(|c| hits[c.0] == size[c.0]);
                if block_ok {
                    Ok(XStructure::Forest {
                        parent: anc,
                        children: a..b + 1,
                    })
                } else {
                    Err(violated(format!("{x} is not a block of Q-node children")))
                }
            }
        }
    }

    /// Replaces the X-structure by a height-one X-tree: a single P-node over
    /// the leaves of `x`, leaving the rest of the tree alone.
    pub fn flatten(&self, x: &SpecSet) -> Result<PqTree> {
        if x.len() < 2 {
            return Ok(self.clone());
        }
        let mut arena = self.arena();
        match self.locate_x_structure(x)? {
            XStructure::Tree(id) => {
                let leaves = self.leaf_ids_below(id);
                arena.node_mut(id).children = leaves;
            }
            XStructure::Forest { parent, children } => {
                let node = self.node(parent);
                let leaves: Vec<NodeId> = node.children[children.clone()]
                    .iter()
                    .flat_map(|&c| self.leaf_ids_below(c))
                    .collect();
                if children.len() == node.children.len() {
                    let target = arena.node_mut(parent);
                    target.kind = Kind::P;
                    target.children = leaves;
                } else {
                    let merged = arena.add(Kind::P, leaves);
                    arena.node_mut(parent).children.splice(children, [merged]);
                }
            }
        }
        Ok(arena.rebuild(self.n, self.root))
    }

    fn leaf_ids_below(&self, id: NodeId) -> Vec<NodeId> {
        self.leaves_below(id).into_iter().map(|v| self.leaf_nodes[v]).collect()
    }

    /// Splits `pi_prime ∈ CONSISTENT⁻¹(flatten(self, x))` as `π σ` with
    /// `π ∈ CONSISTENT⁻¹(self)` and `σ ∈ S_{xπ}`.
    pub fn decompose_through_flatten(&self, x: &SpecSet, pi_prime: &Permutation) -> Result<(Permutation, Permutation)> {
        let flat = self.flatten(x)?;
        self.decompose_with_flattened(&flat, x, pi_prime)
    }

    /// [`Self::decompose_through_flatten`] with `flat = flatten(self, x)`
    /// already at hand.
    pub(crate) fn decompose_with_flattened(
        &self,
        flat: &PqTree,
        x: &SpecSet,
        pi_prime: &Permutation,
    ) -> Result<(Permutation, Permutation)> {
        let solved = flat
            .solve_consistency(&pi_prime.inverse())
            .ok_or_else(|| Error::Inconsistent("π' is not represented by the flattened tree".into()))?;
        let mut front = solved.leaves_below(solved.root);
        if x.len() >= 2 {
            let replacement = self.x_block_frontier(x, &front)?;
            let mut pos = vec![0; self.n];
            for (i, &v) in front.iter().enumerate() {
                pos[v] = i;
            }
            let start = x.raw().iter().map(|&v| pos[v]).min().expect("non-empty");
            front[start..start + x.len()].copy_from_slice(&replacement);
        }
        // Undoing the reorder of the flattened X-tree yields a frontier of
        // an equivalent of `self`; σ is forced by πσ = π'.
        let pi = Permutation::from_raw(front).inverse();
        let sigma = pi.inverse().then(pi_prime);
        debug_assert!(sigma.in_stabilizer(&x.mapped(&pi)));
        Ok((pi, sigma))
    }

    /// The order the X-leaves must take so that `front`, with its X-block
    /// replaced, is the frontier of a tree equivalent to `self`.
    fn x_block_frontier(&self, x: &SpecSet, front: &[usize]) -> Result<Vec<usize>> {
        Ok(match self.locate_x_structure(x)? {
            XStructure::Tree(id) => self.leaves_below(id),
            XStructure::Forest { parent, children } => {
                let kids = &self.node(parent).children;
                if children.len() == kids.len() {
                    return Ok(self.leaves_below(parent));
                }
                // Whether the Q-node was reversed shows in any sibling leaf.
                let (probe, probe_left) = if children.start > 0 {
                    (kids[children.start - 1], true)
                } else {
                    (kids[children.end], false)
                };
                let probe_leaf = self.leaves_below(probe)[0];
                let probe_pos = front.iter().position(|&v| v == probe_leaf).expect("leaf");
                let first_x = front
                    .iter()
                    .position(|&v| x.raw().binary_search(&v).is_ok())
                    .expect("X non-empty");
                let reversed = (probe_pos < first_x) != probe_left;
                let forest = &kids[children];
                let ordered: Vec<NodeId> = if reversed {
                    forest.iter().rev().copied().collect()
                } else {
                    forest.to_vec()
                };
                ordered.into_iter().flat_map(|c| self.leaves_below(c)).collect()
            }
        })
    }
}
