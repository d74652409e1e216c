//! Permutations of `[n]` and specification sets.
//!
//! A permutation σ is identified with its image tuple `(1σ, 2σ, …, nσ)`.
//! Composition is written left to right: in `sigma.compose(&tau)` the
//! permutation `sigma` is applied first, so `i ↦ (iσ)τ`. This is the only
//! composition order exposed by the crate.
//!
//! All public constructors and accessors speak 1-based values. Storage is
//! 0-based.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `[n] = {1, …, n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { img: (0..n).collect() }
    }

    /// Builds a permutation from its 1-based image tuple.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut img = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("image {v} outside [1, {n}]"),
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("image {v} repeated"),
                });
            }
            img.push(v - 1);
        }
        Ok(Self { img })
    }

    /// The transposition `⟨i, j⟩` on `[n]`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        for v in [i, j] {
            if v == 0 || v > n {
                return Err(Error::ElementOutOfRange { element: v, n });
            }
        }
        let mut p = Self::identity(n);
        p.img.swap(i - 1, j - 1);
        Ok(p)
    }

    /// Wraps a 0-based image vector that the caller guarantees is a bijection.
    pub(crate) fn from_raw(img: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&img), "not a bijection: {img:?}");
        Self { img }
    }

    /// 0-based image vector.
    pub(crate) fn raw(&self) -> &[usize] {
        &self.img
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// The image `iσ` of the 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.img[i - 1] + 1
    }

    /// The 1-based image tuple.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_degree(self.degree(), other.degree())?;
        Ok(self.then(other))
    }

    /// Unchecked composition for internal use; degrees must agree.
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            img: self.img.iter().map(|&v| other.img[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.img.len()];
        for (i, &v) in self.img.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { img: inv }
    }

    /// `π⁻¹ σ π`, the image of `self` under the inner automorphism of π.
    pub fn conjugate_by(&self, pi: &Permutation) -> Result<Permutation> {
        check_degree(self.degree(), pi.degree())?;
        Ok(pi.inverse().then(self).then(pi))
    }

    /// Membership in the subgroup `S_X`: every point outside `X` is fixed.
    pub fn in_stabilizer(&self, x: &SpecSet) -> bool {
        assert_degree(self.degree(), x.universe());
        let mut inside = vec![false; self.degree()];
        for &e in &x.elems {
            inside[e] = true;
        }
        self.img.iter().enumerate().all(|(i, &v)| inside[i] || i == v)
    }

    /// True iff `iτ < jτ` for all `i < j` in `X`.
    pub fn is_x_sorted(&self, x: &SpecSet) -> bool {
        assert_degree(self.degree(), x.universe());
        x.elems.windows(2).all(|w| self.img[w[0]] < self.img[w[1]])
    }

    /// The unique `X`-sorted permutation which coincides with `self` outside `X`.
    pub fn x_sort(&self, x: &SpecSet) -> Permutation {
        assert_degree(self.degree(), x.universe());
        let mut img = self.img.clone();
        let mut marks = vec![false; img.len()];
        bucket_sort_positions(&mut img, &x.elems, &mut marks);
        Permutation { img }
    }
}

/// Rewrites the values at `positions` (sorted, 0-based) into increasing
/// order by bucket sort. `marks` must be all-false on entry and is left
/// all-false on exit.
pub(crate) fn bucket_sort_positions(img: &mut [usize], positions: &[usize], marks: &mut [bool]) {
    if positions.len() < 2 {
        return;
    }
    let (mut lo, mut hi) = (usize::MAX, 0);
    for &p in positions {
        let v = img[p];
        marks[v] = true;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let mut slots = positions.iter();
    for (v, mark) in marks.iter_mut().enumerate().take(hi + 1).skip(lo) {
        if std::mem::replace(mark, false) {
            let &p = slots.next().expect("one slot per marked value");
            img[p] = v;
        }
    }
}

fn is_bijection(img: &[usize]) -> bool {
    let mut seen = vec![false; img.len()];
    img.iter()
        .all(|&v| v < img.len() && !std::mem::replace(&mut seen[v], true))
}

pub(crate) fn check_degree(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::IncompatibleDegree { left, right })
    }
}

fn assert_degree(left: usize, right: usize) {
    assert_eq!(left, right, "incompatible degree");
}

fn write_tuple(f: &mut fmt::Formatter<'_>, open: char, close: char, it: impl Iterator<Item = usize>) -> fmt::Result {
    write!(f, "{open}")?;
    for (k, v) in it.enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, "{close}")
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, '(', ')', self.img.iter().map(|&v| v + 1))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A specification set `X ⊆ [n]`, stored sorted without duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecSet {
    universe: usize,
    elems: Vec<usize>,
}

impl SpecSet {
    /// Builds `X ⊆ [n]` from 1-based elements in any order.
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elems = Vec::new();
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            elems.push(e - 1);
        }
        elems.sort_unstable();
        if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0] + 1));
        }
        Ok(Self { universe: n, elems })
    }

    /// The integer interval `[lo:hi]`.
    pub fn interval(n: usize, lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Self::new(n, lo..=hi)
    }

    pub fn full(n: usize) -> Self {
        Self {
            universe: n,
            elems: (0..n).collect(),
        }
    }

    pub(crate) fn from_sorted_raw(n: usize, elems: Vec<usize>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elems.last().is_none_or(|&e| e < n));
        Self { universe: n, elems }
    }

    /// Builds a set from unsorted distinct 0-based elements.
    pub(crate) fn from_raw_unsorted(n: usize, mut elems: Vec<usize>) -> Self {
        elems.sort_unstable();
        Self::from_sorted_raw(n, elems)
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.elems
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// 1-based elements in increasing order.
    pub fn elements(&self) -> Vec<usize> {
        self.elems.iter().map(|&e| e + 1).collect()
    }

    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && self.elems.binary_search(&(element - 1)).is_ok()
    }

    /// A set is an interval iff `max − min + 1 = |X|`.
    pub fn is_interval(&self) -> bool {
        match (self.elems.first(), self.elems.last()) {
            (Some(&lo), Some(&hi)) => hi - lo + 1 == self.elems.len(),
            _ => true,
        }
    }

    /// `Xσ = {iσ : i ∈ X}`.
    pub fn image_under(&self, sigma: &Permutation) -> Result<SpecSet> {
        check_degree(self.universe, sigma.degree())?;
        Ok(self.mapped(sigma))
    }

    pub(crate) fn mapped(&self, sigma: &Permutation) -> SpecSet {
        let img = sigma.raw();
        Self::from_raw_unsorted(self.universe, self.elems.iter().map(|&e| img[e]).collect())
    }
}

impl fmt::Display for SpecSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, '{', '}', self.elems.iter().map(|&e| e + 1))
    }
}

impl fmt::Debug for SpecSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sequence of transpositions, kept as their 2-sets `{i, j}` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranspositionSeq {
    pub pairs: Vec<(usize, usize)>,
}

impl TranspositionSeq {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The 2-sets as specification sets over `[n]`.
    pub fn to_spec_sets(&self, n: usize) -> Result<Vec<SpecSet>> {
        self.pairs.iter().map(|&(i, j)| SpecSet::new(n, [i, j])).collect()
    }

    /// Composition (left to right) of the transpositions selected by `mask`.
    pub fn compose_selected(&self, n: usize, mask: impl Fn(usize) -> bool) -> Result<Permutation> {
        let mut acc = Permutation::identity(n);
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            if mask(k) {
                acc = acc.then(&Permutation::transposition(n, i, j)?);
            }
        }
        Ok(acc)
    }
}
