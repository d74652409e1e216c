//! Brute-force reference implementations for small degrees.
//!
//! Everything here enumerates permutations explicitly and shares no code
//! with the solvers beyond the permutation and set types, so it can serve
//! as ground truth for them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::{Instance, Witness};
use crate::perm::{Permutation, SpecSet};
use crate::pqtree::{PqTree, Shape};

/// Largest degree accepted by [`membership`] and [`witness`] by default.
pub const MEMBERSHIP_CAP: usize = 7;
/// Largest leaf count accepted by [`consistent`].
pub const CONSISTENT_CAP: usize = 7;
/// Largest degree accepted by [`pi_sets`].
pub const PI_SETS_CAP: usize = 6;
/// Largest degree accepted by [`c1p`].
pub const C1P_CAP: usize = 8;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::OracleScaleExceeded { n, cap });
    }
    Ok(())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lehmer-code rank of a 0-based image vector.
fn rank(img: &[usize]) -> usize {
    let n = img.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = img[i + 1..].iter().filter(|&&v| v < img[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

fn unrank(n: usize, mut r: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        digits[i] = r % (n - i);
        r /= n - i;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// Every permutation of degree `n`, in lexicographic order of images.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (0..factorial(n)).map(move |r| Permutation::from_raw(unrank(n, r)))
}

/// Every element of `S_X`, as permutations of degree `x.universe()`.
pub fn stabilizer(x: &SpecSet) -> Vec<Permutation> {
    stabilizer_of(x.universe(), &x.elements().iter().map(|v| v - 1).collect::<Vec<_>>())
}

fn stabilizer_of(n: usize, points: &[usize]) -> Vec<Permutation> {
    let k = points.len();
    (0..factorial(k))
        .map(|r| {
            let arrangement = unrank(k, r);
            let mut img: Vec<usize> = (0..n).collect();
            for (i, &a) in arrangement.iter().enumerate() {
                img[points[i]] = points[a];
            }
            Permutation::from_raw(img)
        })
        .collect()
}

fn is_consecutive(points: &mut [usize]) -> bool {
    points.sort_unstable();
    points.windows(2).all(|w| w[1] == w[0] + 1)
}

/// A set of permutations of one degree, stored as a bitset over Lehmer ranks.
#[derive(Clone, PartialEq, Eq)]
pub struct PermSet {
    n: usize,
    bits: Vec<u64>,
    len: usize,
}

impl PermSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; factorial(n).div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for p in all_permutations(n) {
            s.insert(&p);
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Returns whether `p` was newly added.
    pub fn insert(&mut self, p: &Permutation) -> bool {
        assert_eq!(p.degree(), self.n, "degree mismatch");
        let r = rank(p.raw());
        let (word, bit) = (r / 64, 1u64 << (r % 64));
        let fresh = self.bits[word] & bit == 0;
        self.bits[word] |= bit;
        self.len += usize::from(fresh);
        fresh
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.n {
            return false;
        }
        let r = rank(p.raw());
        self.bits[r / 64] >> (r % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == factorial(self.n)
    }

    /// Members in rank order.
    pub fn iter(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..factorial(self.n))
            .filter(|r| self.bits[r / 64] >> (r % 64) & 1 == 1)
            .map(|r| Permutation::from_raw(unrank(self.n, r)))
    }

    /// `{π⁻¹ : π ∈ self}`.
    pub fn inverses(&self) -> PermSet {
        let mut out = PermSet::empty(self.n);
        for p in self.iter() {
            out.insert(&p.inverse());
        }
        out
    }
}

impl FromIterator<Permutation> for PermSet {
    /// Panics on an empty iterator, whose degree is unknown.
    fn from_iter<I: IntoIterator<Item = Permutation>>(iter: I) -> Self {
        let mut iter = iter.into_iter().peekable();
        let n = iter.peek().expect("degree of an empty set is unknown").degree();
        let mut s = PermSet::empty(n);
        for p in iter {
            s.insert(&p);
        }
        s
    }
}

impl std::fmt::Debug for PermSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The reachable products `R_0 = {id}`, `R_j = R_{j−1} · S_{X_j}`.
fn reachable(instance: &Instance) -> Vec<PermSet> {
    let n = instance.n();
    let mut levels = Vec::with_capacity(instance.m() + 1);
    let mut current = PermSet::empty(n);
    current.insert(&Permutation::identity(n));
    for x in instance.sets() {
        let next = if current.is_full() {
            current.clone()
        } else {
            let group = stabilizer(x);
            let mut next = PermSet::empty(n);
            for rho in current.iter() {
                for sigma in &group {
                    next.insert(&rho.then(sigma));
                }
            }
            next
        };
        levels.push(std::mem::replace(&mut current, next));
    }
    levels.push(current);
    levels
}

/// Whether `τ_0 ∈ S_{X_1} ⋯ S_{X_m}`, for `n ≤ cap`.
pub fn membership_with_cap(instance: &Instance, cap: usize) -> Result<bool> {
    check_cap(instance.n(), cap)?;
    Ok(reachable(instance).last().expect("R_m").contains(instance.tau()))
}

pub fn membership(instance: &Instance) -> Result<bool> {
    membership_with_cap(instance, MEMBERSHIP_CAP)
}

/// A witness for a YES-instance, found by walking the reachable sets back
/// from `τ_0`; `None` on NO-instances.
pub fn witness_with_cap(instance: &Instance, cap: usize) -> Result<Option<Witness>> {
    check_cap(instance.n(), cap)?;
    let levels = reachable(instance);
    let mut target = instance.tau().clone();
    if !levels[instance.m()].contains(&target) {
        return Ok(None);
    }
    let mut factors = Vec::with_capacity(instance.m());
    for j in (1..=instance.m()).rev() {
        let sigma = stabilizer(instance.set(j))
            .into_iter()
            .find(|s| levels[j - 1].contains(&target.then(&s.inverse())))
            .expect("τ ∈ R_j lies in some coset R_{j−1} σ");
        target = target.then(&sigma.inverse());
        factors.push(sigma);
    }
    factors.reverse();
    Ok(Some(Witness { factors }))
}

pub fn witness(instance: &Instance) -> Result<Option<Witness>> {
    witness_with_cap(instance, MEMBERSHIP_CAP)
}

/// The literal set recursion: `Π_0 = S_n`, `X_0 = [n]`,
/// `Π'_j = {πσ : π ∈ Π_{j−1}, σ ∈ S_{X_{j−1}π}}` and
/// `Π_j = {π ∈ Π'_j : X_jπ is an interval}`. Returns `(Π'_j, Π_j)` for
/// `j = 1, …, m`.
pub fn pi_sets(n: usize, sets: &[SpecSet]) -> Result<Vec<(PermSet, PermSet)>> {
    check_cap(n, PI_SETS_CAP)?;
    let mut previous_set: Vec<usize> = (0..n).collect();
    let mut previous = PermSet::full(n);
    let mut out = Vec::with_capacity(sets.len());
    for x in sets {
        let mut expanded = PermSet::empty(n);
        for pi in previous.iter() {
            let image: Vec<usize> = previous_set.iter().map(|&v| pi.raw()[v]).collect();
            for sigma in stabilizer_of(n, &image) {
                expanded.insert(&pi.then(&sigma));
            }
        }
        let current_set: Vec<usize> = x.elements().iter().map(|v| v - 1).collect();
        let mut filtered = PermSet::empty(n);
        for pi in expanded.iter() {
            let mut image: Vec<usize> = current_set.iter().map(|&v| pi.raw()[v]).collect();
            if is_consecutive(&mut image) {
                filtered.insert(&pi);
            }
        }
        previous = filtered.clone();
        previous_set = current_set;
        out.push((expanded, filtered));
    }
    Ok(out)
}

/// Whether some `π` makes every `X_jπ⁻¹` an interval.
pub fn c1p(n: usize, sets: &[SpecSet]) -> Result<bool> {
    check_cap(n, C1P_CAP)?;
    let members: Vec<Vec<usize>> = sets
        .iter()
        .map(|x| x.elements().iter().map(|v| v - 1).collect())
        .collect();
    Ok(all_permutations(n).any(|rho| {
        members.iter().all(|x| {
            let mut image: Vec<usize> = x.iter().map(|&v| rho.raw()[v]).collect();
            is_consecutive(&mut image)
        })
    }))
}

/// Every frontier of every tree equivalent to `shape`, as 1-based sequences.
fn frontiers(shape: &Shape) -> Vec<Vec<usize>> {
    match shape {
        Shape::Leaf(v) => vec![vec![*v]],
        Shape::Q(kids) => {
            let forward = concat_choices(&kids.iter().map(frontiers).collect::<Vec<_>>());
            let mut all = forward.clone();
            let reversed: Vec<Vec<Vec<usize>>> = kids.iter().rev().map(frontiers).collect();
            all.extend(concat_choices(&reversed));
            all
        }
        Shape::P(kids) => {
            let per_child: Vec<Vec<Vec<usize>>> = kids.iter().map(frontiers).collect();
            let k = kids.len();
            let mut all = Vec::new();
            for r in 0..factorial(k) {
                let order: Vec<Vec<Vec<usize>>> = unrank(k, r).into_iter().map(|i| per_child[i].clone()).collect();
                all.extend(concat_choices(&order));
            }
            all
        }
    }
}

/// Concatenations picking one sequence from each list, in order.
fn concat_choices(lists: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut acc = vec![Vec::new()];
    for options in lists {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for o in options {
                let mut s = prefix.clone();
                s.extend(o);
                next.push(s);
            }
        }
        acc = next;
    }
    acc
}

/// `CONSISTENT(T)`, by enumerating the equivalent trees.
pub fn consistent(tree: &PqTree) -> Result<PermSet> {
    check_cap(tree.degree(), CONSISTENT_CAP)?;
    let mut out = PermSet::empty(tree.degree());
    for f in frontiers(&tree.to_shape()) {
        out.insert(&Permutation::from_images(&f).expect("a frontier is a permutation"));
    }
    Ok(out)
}

fn min_leaf(shape: &Shape) -> usize {
    match shape {
        Shape::Leaf(v) => *v,
        Shape::P(kids) | Shape::Q(kids) => kids.iter().map(min_leaf).min().expect("internal nodes have children"),
    }
}

/// A fixed representative of the equivalence class of `shape`: P-children
/// sorted by smallest leaf, Q-nodes read from the end with the smaller
/// smallest leaf.
pub fn canonical(shape: &Shape) -> Shape {
    match shape {
        Shape::Leaf(v) => Shape::Leaf(*v),
        Shape::P(kids) => {
            let mut kids: Vec<Shape> = kids.iter().map(canonical).collect();
            kids.sort_by_key(min_leaf);
            Shape::P(kids)
        }
        Shape::Q(kids) => {
            let mut kids: Vec<Shape> = kids.iter().map(canonical).collect();
            if min_leaf(&kids[0]) > min_leaf(kids.last().expect("children")) {
                kids.reverse();
            }
            Shape::Q(kids)
        }
    }
}

/// Whether two trees are equivalent (one arises from the other by permuting
/// P-children and reversing Q-children).
pub fn equivalent(a: &PqTree, b: &PqTree) -> bool {
    canonical(&a.to_shape()) == canonical(&b.to_shape())
}

/// One canonical representative of every equivalence class of proper
/// PQ-trees with leaves `1, …, k`.
pub fn all_trees(k: usize) -> Vec<PqTree> {
    assert!((1..=12).contains(&k), "tree enumeration supports 1 to 12 leaves");
    let mut memo = HashMap::new();
    shapes_on(((1u32 << k) - 1) as u16, &mut memo)
        .iter()
        .map(|s| PqTree::from_shape(s).expect("enumerated trees are proper"))
        .collect()
}

fn mask_leaves(mask: u16) -> Vec<usize> {
    (0..16).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Partitions of `mask` into blocks, blocks ordered by their lowest bit.
fn set_partitions(mask: u16) -> Vec<Vec<u16>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask & !low;
    let mut out = Vec::new();
    // Every subset of `rest` joins `low` in its block.
    let mut sub = rest;
    loop {
        let block = low | sub;
        for mut tail in set_partitions(rest & !sub) {
            tail.insert(0, block);
            out.push(tail);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

fn shapes_on(mask: u16, memo: &mut HashMap<u16, Vec<Shape>>) -> Vec<Shape> {
    if let Some(s) = memo.get(&mask) {
        return s.clone();
    }
    let leaves = mask_leaves(mask);
    let result = if leaves.len() == 1 {
        vec![Shape::Leaf(leaves[0])]
    } else {
        let mut out = Vec::new();
        for blocks in set_partitions(mask) {
            if blocks.len() < 2 {
                continue;
            }
            let children: Vec<Vec<Shape>> = blocks.iter().map(|&b| shapes_on(b, memo)).collect();
            for kids in product(&children) {
                out.push(Shape::P(kids));
            }
            if blocks.len() >= 3 {
                let k = blocks.len();
                for r in 0..factorial(k) {
                    let order = unrank(k, r);
                    if order[0] > order[k - 1] {
                        continue;
                    }
                    let ordered: Vec<Vec<Shape>> = order.iter().map(|&i| children[i].clone()).collect();
                    for kids in product(&ordered) {
                        out.push(Shape::Q(kids));
                    }
                }
            }
        }
        out
    };
    memo.insert(mask, result.clone());
    result
}

fn product(lists: &[Vec<Shape>]) -> Vec<Vec<Shape>> {
    let mut acc: Vec<Vec<Shape>> = vec![Vec::new()];
    for options in lists {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for o in options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}
