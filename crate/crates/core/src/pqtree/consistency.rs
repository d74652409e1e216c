//! Deciding `π ∈ CONSISTENT(T)` and producing the equivalent tree.

use super::{Kind, NodeId, PqTree};
use crate::perm::Permutation;

impl PqTree {
    /// Returns the tree equivalent to `self` whose frontier is `pi`, or
    /// `None` when no equivalent tree has that frontier. Runs in `O(n)`.
    ///
    /// For every node the span `[P_min, P_max]` of positions its leaves take
    /// in `pi` is computed bottom-up. P-node children are then ordered by
    /// `P_min` with one global bucket sort, Q-nodes are oriented by their
    /// first two children, and each node must see its children's spans in
    /// strictly increasing, non-overlapping order. Node handles of `self`
    /// stay valid for the result.
    pub fn solve_consistency(&self, pi: &Permutation) -> Option<PqTree> {
        assert_eq!(pi.degree(), self.n, "degree mismatch");
        let mut pos = vec![0; self.n];
        for (i, &leaf) in pi.raw().iter().enumerate() {
            pos[leaf] = i;
        }
        let slots = self.nodes.len();
        let mut pmin = vec![usize::MAX; slots];
        let mut pmax = vec![0; slots];
        let post = self.postorder(self.root);
        for &id in &post {
            let node = self.node(id);
            if let Kind::Leaf(v) = node.kind {
                pmin[id.0] = pos[v];
                pmax[id.0] = pos[v];
            }
            if let Some(p) = node.parent {
                pmin[p.0] = pmin[p.0].min(pmin[id.0]);
                pmax[p.0] = pmax[p.0].max(pmax[id.0]);
            }
        }

        // Global bucket sort of all non-root nodes by P_min; appending to the
        // parent in that order sorts every P-node's children.
        let mut buckets: Vec<Vec<NodeId>> = vec![Vec::new(); self.n];
        for &id in &post {
            if id != self.root {
                buckets[pmin[id.0]].push(id);
            }
        }
        let mut nodes = self.nodes.clone();
        for &id in &post {
            if nodes[id.0].kind == Kind::P {
                nodes[id.0].children.clear();
            }
        }
        for bucket in &buckets {
            for &id in bucket {
                let parent = self.node(id).parent.expect("non-root");
                if nodes[parent.0].kind == Kind::P {
                    debug_assert!(nodes[parent.0].children.last().is_none_or(|c| pmin[c.0] != pmin[id.0]));
                    nodes[parent.0].children.push(id);
                }
            }
        }
        for &id in &post {
            let node = &mut nodes[id.0];
            if node.kind == Kind::Q && pmin[node.children[0].0] > pmin[node.children[1].0] {
                node.children.reverse();
            }
            if node.children.windows(2).any(|w| pmax[w[0].0] >= pmin[w[1].0]) {
                return None;
            }
        }
        let result = PqTree {
            n: self.n,
            nodes,
            root: self.root,
            leaf_nodes: self.leaf_nodes.clone(),
        };
        (result.leaves_below(result.root) == pi.raw()).then_some(result)
    }

    /// Whether `pi` is the frontier of some tree equivalent to `self`.
    pub fn is_consistent(&self, pi: &Permutation) -> bool {
        self.solve_consistency(pi).is_some()
    }
}
