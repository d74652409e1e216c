//! Proper PQ-trees over `[n]`.
//!
//! A PQ-tree is an ordered tree whose leaves are the elements of `[n]` and
//! whose internal nodes are P-nodes (children may be permuted freely) or
//! Q-nodes (children may only be reversed). It stands for the set
//! `CONSISTENT(T)` of frontiers of its equivalent trees. A tree is proper when
//! every element is exactly one leaf, P-nodes have at least two children and
//! Q-nodes at least three.
//!
//! Trees are immutable values: every operation returns a new tree. Node
//! handles are only meaningful for the tree that issued them.

mod consistency;
mod flatten;
mod reduce;
mod text;

use std::fmt;

pub use flatten::XStructure;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Handle of a node inside one [`PqTree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(usize);

/// Public view of a node. Leaf labels are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf(usize),
    P,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Leaf(usize),
    P,
    Q,
}

#[derive(Debug, Clone)]
struct Node {
    kind: Kind,
    children: Vec<NodeId>,
    parent: Option<NodeId>,
}

/// A recursive description of a tree, used to build trees and to walk them
/// structurally. Leaf labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Leaf(usize),
    P(Vec<Shape>),
    Q(Vec<Shape>),
}

#[derive(Clone)]
pub struct PqTree {
    n: usize,
    nodes: Vec<Node>,
    root: NodeId,
    leaf_nodes: Vec<NodeId>,
}

impl PqTree {
    /// The single P-node over leaves `1, …, n`; it represents all of `S_n`.
    pub fn universal(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegreeTooSmall { n, min: 2 });
        }
        let mut arena = Arena::default();
        let leaves: Vec<NodeId> = (0..n).map(|v| arena.add(Kind::Leaf(v), Vec::new())).collect();
        let root = arena.add(Kind::P, leaves);
        Ok(arena.finish(n, root))
    }

    /// Builds a proper tree; the leaf labels must be exactly `1, …, k`.
    pub fn from_shape(shape: &Shape) -> Result<Self> {
        let mut arena = Arena::default();
        let mut leaf_count = 0;
        let root = arena.add_shape(shape, &mut leaf_count);
        let tree = arena.finish_unchecked(leaf_count, root);
        tree.check_proper()?;
        Ok(tree)
    }

    pub fn to_shape(&self) -> Shape {
        self.shape_of(self.root)
    }

    fn shape_of(&self, id: NodeId) -> Shape {
        let node = self.node(id);
        let kids = || node.children.iter().map(|&c| self.shape_of(c)).collect();
        match node.kind {
            Kind::Leaf(v) => Shape::Leaf(v + 1),
            Kind::P => Shape::P(kids()),
            Kind::Q => Shape::Q(kids()),
        }
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        match self.node(id).kind {
            Kind::Leaf(v) => NodeKind::Leaf(v + 1),
            Kind::P => NodeKind::P,
            Kind::Q => NodeKind::Q,
        }
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.node(id).children
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.node(id).parent
    }

    /// The leaf node carrying the 1-based label `value`.
    pub fn leaf(&self, value: usize) -> NodeId {
        self.leaf_nodes[value - 1]
    }

    /// Number of nodes reachable from the root.
    pub fn node_count(&self) -> usize {
        self.preorder(self.root).len()
    }

    /// The leaves read left to right, as the permutation `i ↦ i-th leaf`.
    pub fn frontier(&self) -> Permutation {
        Permutation::from_raw(self.leaves_below(self.root))
    }

    /// 1-based leaf labels of the subtree at `id`, left to right.
    pub fn subtree_leaves(&self, id: NodeId) -> Vec<usize> {
        self.leaves_below(id).into_iter().map(|v| v + 1).collect()
    }

    fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    /// 0-based leaf labels below `id`, left to right.
    fn leaves_below(&self, id: NodeId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            let node = self.node(v);
            match node.kind {
                Kind::Leaf(l) => out.push(l),
                _ => stack.extend(node.children.iter().rev()),
            }
        }
        out
    }

    fn preorder(&self, from: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.node(v).children.iter().rev());
        }
        out
    }

    /// Children before parents.
    fn postorder(&self, from: NodeId) -> Vec<NodeId> {
        let mut order = self.preorder(from);
        order.reverse();
        order
    }

    /// Per-node leaf count and count of leaves in `marked`, indexed by arena slot.
    fn counts(&self, marked: &[bool]) -> (Vec<usize>, Vec<usize>) {
        let mut size = vec![0; self.nodes.len()];
        let mut hits = vec![0; self.nodes.len()];
        for id in self.postorder(self.root) {
            let node = self.node(id);
            if let Kind::Leaf(v) = node.kind {
                size[id.0] = 1;
                hits[id.0] = usize::from(marked[v]);
            }
            if let Some(p) = node.parent {
                size[p.0] += size[id.0];
                hits[p.0] += hits[id.0];
            }
        }
        (size, hits)
    }

    fn check_proper(&self) -> Result<()> {
        let mut seen = vec![false; self.n];
        for id in self.preorder(self.root) {
            let node = self.node(id);
            match node.kind {
                Kind::Leaf(v) => {
                    if v >= self.n {
                        return Err(Error::ImproperTree(format!("leaf {} outside [1, {}]", v + 1, self.n)));
                    }
                    if std::mem::replace(&mut seen[v], true) {
                        return Err(Error::ImproperTree(format!("leaf {} appears twice", v + 1)));
                    }
                }
                Kind::P if node.children.len() < 2 => {
                    return Err(Error::ImproperTree("P-node with fewer than 2 children".into()))
                }
                Kind::Q if node.children.len() < 3 => {
                    return Err(Error::ImproperTree("Q-node with fewer than 3 children".into()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Copy of the arena for in-place surgery followed by [`Arena::rebuild`].
    fn arena(&self) -> Arena {
        Arena {
            nodes: self.nodes.clone(),
        }
    }
}

impl PartialEq for PqTree {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.to_string() == other.to_string()
    }
}

impl Eq for PqTree {}

impl fmt::Debug for PqTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Scratch node storage used while building or rewriting a tree.
#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
}

impl Arena {
    fn add(&mut self, kind: Kind, children: Vec<NodeId>) -> NodeId {
        self.nodes.push(Node {
            kind,
            children,
            parent: None,
        });
        NodeId(self.nodes.len() - 1)
    }

    fn add_shape(&mut self, shape: &Shape, leaf_count: &mut usize) -> NodeId {
        match shape {
            Shape::Leaf(v) => {
                *leaf_count += 1;
                // 0 wraps to usize::MAX and is rejected by the properness check.
                self.add(Kind::Leaf(v.wrapping_sub(1)), Vec::new())
            }
            Shape::P(kids) | Shape::Q(kids) => {
                let children = kids.iter().map(|k| self.add_shape(k, leaf_count)).collect();
                let kind = if matches!(shape, Shape::P(_)) { Kind::P } else { Kind::Q };
                self.add(kind, children)
            }
        }
    }

    fn node_mut(&mut self, id: NodeId) -> &mut Node {
        &mut self.nodes[id.0]
    }

    /// Takes ownership of the nodes as they are; fixes parents and leaf index.
    fn finish_unchecked(mut self, n: usize, root: NodeId) -> PqTree {
        let mut leaf_nodes = vec![NodeId(usize::MAX); n];
        for node in &mut self.nodes {
            node.parent = None;
        }
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            let children = std::mem::take(&mut self.nodes[id.0].children);
            for &c in &children {
                self.nodes[c.0].parent = Some(id);
                stack.push(c);
            }
            if let Kind::Leaf(v) = self.nodes[id.0].kind {
                if v < n {
                    leaf_nodes[v] = id;
                }
            }
            self.nodes[id.0].children = children;
        }
        PqTree {
            n,
            nodes: self.nodes,
            root,
            leaf_nodes,
        }
    }

    fn finish(self, n: usize, root: NodeId) -> PqTree {
        let tree = self.finish_unchecked(n, root);
        debug_assert!(tree.check_proper().is_ok(), "improper tree {tree}");
        tree
    }

    /// Copies the nodes reachable from `root` into a fresh arena, splicing
    /// out unary nodes and turning binary Q-nodes into P-nodes.
    fn rebuild(&self, n: usize, root: NodeId) -> PqTree {
        let skip_unary = |mut id: NodeId| {
            while !matches!(self.nodes[id.0].kind, Kind::Leaf(_)) && self.nodes[id.0].children.len() == 1 {
                id = self.nodes[id.0].children[0];
            }
            id
        };
        let mut out = Arena::default();
        let mut stack: Vec<(NodeId, Option<NodeId>)> = vec![(skip_unary(root), None)];
        let mut new_root = None;
        while let Some((old, new_parent)) = stack.pop() {
            let node = &self.nodes[old.0];
            let kind = match node.kind {
                Kind::Q if node.children.len() == 2 => Kind::P,
                k => k,
            };
            let id = out.add(kind, Vec::with_capacity(node.children.len()));
            match new_parent {
                Some(p) => out.node_mut(p).children.push(id),
                None => new_root = Some(id),
            }
            for &c in node.children.iter().rev() {
                stack.push((skip_unary(c), Some(id)));
            }
        }
        out.finish(n, new_root.expect("tree has a root"))
    }
}
