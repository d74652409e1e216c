//! Booth–Lueker reduction: restrict `CONSISTENT(T)` to the frontiers in
//! which a given set of leaves is contiguous.

use super::{Arena, Kind, NodeId, PqTree};
use crate::perm::SpecSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Empty,
    Partial,
    Full,
}

/// `E* S? F*`: empty children, at most one partial child, then full children.
fn empty_then_full(statuses: impl Iterator<Item = Status>) -> bool {
    let mut seen_non_empty = false;
    for s in statuses {
        match (seen_non_empty, s) {
            (false, Status::Empty) | (true, Status::Full) => {}
            (false, _) => seen_non_empty = true,
            (true, _) => return false,
        }
    }
    true
}

struct Reducer<'a> {
    tree: &'a PqTree,
    arena: Arena,
    size: Vec<usize>,
    hits: Vec<usize>,
    /// For each processed partial node: its replacement, as a sequence of
    /// siblings ordered from the empty side to the full side.
    partial: Vec<Option<Vec<NodeId>>>,
}

impl Reducer<'_> {
    fn status(&self, id: NodeId) -> Status {
        match self.hits[id.0] {
            0 => Status::Empty,
            h if h == self.size[id.0] => Status::Full,
            _ => Status::Partial,
        }
    }

    /// One node, or a fresh P-node over several.
    fn group(&mut self, ids: Vec<NodeId>) -> Option<NodeId> {
        match ids.len() {
            0 => None,
            1 => Some(ids[0]),
            _ => Some(self.arena.add(Kind::P, ids)),
        }
    }

    fn take_partial(&mut self, id: NodeId) -> Vec<NodeId> {
        self.partial[id.0].take().expect("partial child processed first")
    }

    fn split(&self, children: &[NodeId]) -> (Vec<NodeId>, Vec<NodeId>, Vec<NodeId>) {
        let (mut e, mut p, mut f) = (Vec::new(), Vec::new(), Vec::new());
        for &c in children {
            match self.status(c) {
                Status::Empty => e.push(c),
                Status::Partial => p.push(c),
                Status::Full => f.push(c),
            }
        }
        (e, p, f)
    }

    /// A partial node strictly below the pertinent root.
    fn partial_below_root(&mut self, id: NodeId) -> Option<Vec<NodeId>> {
        let node = self.tree.node(id);
        match node.kind {
            Kind::Leaf(_) => unreachable!("leaves are never partial"),
            Kind::P => {
                let (e, p, f) = self.split(&node.children);
                if p.len() > 1 {
                    return None;
                }
                let mut seq = Vec::new();
                seq.extend(self.group(e));
                if let Some(&s) = p.first() {
                    seq.extend(self.take_partial(s));
                }
                seq.extend(self.group(f));
                Some(seq)
            }
            Kind::Q => {
                let statuses = || node.children.iter().map(|&c| self.status(c));
                let ordered: Vec<NodeId> = if empty_then_full(statuses()) {
                    node.children.clone()
                } else if empty_then_full(statuses().rev()) {
                    node.children.iter().rev().copied().collect()
                } else {
                    return None;
                };
                let mut seq = Vec::with_capacity(ordered.len());
                for c in ordered {
                    if self.status(c) == Status::Partial {
                        seq.extend(self.take_partial(c));
                    } else {
                        seq.push(c);
                    }
                }
                Some(seq)
            }
        }
    }

    fn pertinent_root(&mut self, root: NodeId) -> Option<()> {
        let node = self.tree.node(root);
        match node.kind {
            Kind::Leaf(_) => unreachable!("the pertinent root of two or more leaves is internal"),
            Kind::P => {
                let (e, p, f) = self.split(&node.children);
                let full = self.group(f);
                let q = match p.as_slice() {
                    [] => {
                        let mut kids = e;
                        kids.extend(full);
                        self.arena.node_mut(root).children = kids;
                        return Some(());
                    }
                    [s] => {
                        let mut q = self.take_partial(*s);
                        q.extend(full);
                        q
                    }
                    [s1, s2] => {
                        let mut q = self.take_partial(*s1);
                        q.extend(full);
                        let mut tail = self.take_partial(*s2);
                        tail.reverse();
                        q.extend(tail);
                        q
                    }
                    _ => return None,
                };
                if e.is_empty() {
                    let r = self.arena.node_mut(root);
                    r.kind = Kind::Q;
                    r.children = q;
                } else {
                    let q = self.arena.add(Kind::Q, q);
                    let mut kids = e;
                    kids.push(q);
                    self.arena.node_mut(root).children = kids;
                }
                Some(())
            }
            Kind::Q => {
                let st: Vec<Status> = node.children.iter().map(|&c| self.status(c)).collect();
                let a = st.iter().position(|&s| s != Status::Empty).expect("pertinent");
                let b = st.iter().rposition(|&s| s != Status::Empty).expect("pertinent");
                if st[a + 1..b].iter().any(|&s| s != Status::Full) {
                    return None;
                }
                let mut kids = Vec::with_capacity(node.children.len());
                for (i, &c) in node.children.iter().enumerate() {
                    if st[i] != Status::Partial {
                        kids.push(c);
                    } else if i == a {
                        kids.extend(self.take_partial(c));
                    } else {
                        let mut seq = self.take_partial(c);
                        seq.reverse();
                        kids.extend(seq);
                    }
                }
                self.arena.node_mut(root).children = kids;
                Some(())
            }
        }
    }
}

impl PqTree {
    /// The tree whose consistent frontiers are exactly those of `self` that
    /// keep the elements of `x` contiguous, or `None` if there are none.
    /// Sets with fewer than two elements impose no constraint.
    pub fn reduce(&self, x: &SpecSet) -> Option<PqTree> {
        assert_eq!(x.universe(), self.n, "degree mismatch");
        let k = x.len();
        if k < 2 {
            return Some(self.clone());
        }
        let mut marked = vec![false; self.n];
        for &v in x.raw() {
            marked[v] = true;
        }
        let (size, hits) = self.counts(&marked);

        let mut root = self.root;
        while let Some(&c) = self.node(root).children.iter().find(|c| hits[c.0] == k) {
            root = c;
        }
        if size[root.0] == k {
            return Some(self.clone());
        }

        let mut r = Reducer {
            tree: self,
            arena: self.arena(),
            size,
            hits,
            partial: vec![None; self.nodes.len()],
        };
        for id in self.postorder(root) {
            if id != root && r.status(id) == Status::Partial {
                let seq = r.partial_below_root(id)?;
                r.partial[id.0] = Some(seq);
            }
        }
        r.pertinent_root(root)?;
        Some(r.arena.rebuild(self.n, self.root))
    }
}
