//! REDUCE-EXPAND over PQ-trees, chain recovery and the weak-C1P solver.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::interval::{sort_and_factor, Decision};
use crate::perm::{Permutation, SpecSet};
use crate::pqtree::PqTree;

use super::transform::{apply_chain, pull_back_witness, renumber, ChainDescription};

/// The trees `T_0, T'_1, T_1, …, T'_m, T_m` of one REDUCE-EXPAND run.
///
/// `T'_j` consists of the permutations `πσ` with `π ∈ Π_{j−1}` and
/// `σ ∈ S_{X_{j−1}π}`; `T_j` keeps those in which `X_j` lands on an
/// interval. The run stops at the first `j` whose `Π_j` is empty.
#[derive(Debug, Clone)]
pub struct ReduceExpandTrace {
    initial: PqTree,
    expanded: Vec<PqTree>,
    reduced: Vec<PqTree>,
    failure_index: Option<usize>,
}

impl ReduceExpandTrace {
    /// `T_j`, for `j = 0, …, m`, when the run got that far.
    pub fn tree(&self, j: usize) -> Option<&PqTree> {
        match j {
            0 => Some(&self.initial),
            _ => self.reduced.get(j - 1),
        }
    }

    /// `T'_j`, for `j = 1, …, m`.
    pub fn expanded(&self, j: usize) -> Option<&PqTree> {
        j.checked_sub(1).and_then(|i| self.expanded.get(i))
    }

    /// The `j` with `Π_j = ∅`, if any.
    pub fn failure_index(&self) -> Option<usize> {
        self.failure_index
    }

    pub fn succeeded(&self) -> bool {
        self.failure_index.is_none()
    }

    /// Number of sets processed successfully.
    pub fn len(&self) -> usize {
        self.reduced.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reduced.is_empty()
    }

    /// One `T_j:` / `T'_j:` line per tree; a failed reduction prints `none`.
    pub fn to_text(&self) -> String {
        let mut out = format!("T_0: {}\n", self.initial);
        for (i, t) in self.expanded.iter().enumerate() {
            out.push_str(&format!("T'_{}: {t}\n", i + 1));
            match self.reduced.get(i) {
                Some(r) => out.push_str(&format!("T_{}: {r}\n", i + 1)),
                None => out.push_str(&format!("T_{}: none\n", i + 1)),
            }
        }
        out
    }
}

fn check_sets(n: usize, sets: &[SpecSet]) -> Result<()> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { n, min: 2 });
    }
    for x in sets {
        crate::perm::check_degree(n, x.universe())?;
    }
    Ok(())
}

/// Runs REDUCE-EXPAND on sets of size at least two.
pub fn reduce_expand(n: usize, sets: &[SpecSet]) -> Result<ReduceExpandTrace> {
    check_sets(n, sets)?;
    let initial = PqTree::universal(n)?;
    let mut trace = ReduceExpandTrace {
        initial,
        expanded: Vec::with_capacity(sets.len()),
        reduced: Vec::with_capacity(sets.len()),
        failure_index: None,
    };
    for (j, x) in sets.iter().enumerate() {
        // Π'_1 = S_n: flattening the universal tree along [n] changes nothing.
        let expanded = match j {
            0 => trace.initial.clone(),
            _ => trace.reduced[j - 1].flatten(&sets[j - 1])?,
        };
        let reduced = expanded.reduce(x);
        trace.expanded.push(expanded);
        match reduced {
            Some(t) => trace.reduced.push(t),
            None => {
                trace.failure_index = Some(j + 1);
                break;
            }
        }
    }
    Ok(trace)
}

/// Whether the instance can be transformed into one with interval sets.
pub fn is_nice(instance: &Instance) -> bool {
    let (norm, _) = instance.normalize();
    norm.m() == 0 || reduce_expand(norm.n(), norm.sets()).is_ok_and(|t| t.succeeded())
}

/// The weak consecutive-ones property of the columns of a 0/1 matrix with
/// one row per element.
pub fn matrix_wc1p(rows: &[Vec<bool>]) -> Result<bool> {
    let n = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(Error::RaggedMatrix {
                row: i + 1,
                len: r.len(),
                expected: width,
            });
        }
    }
    let sets: Vec<SpecSet> = (0..width)
        .map(|c| SpecSet::from_sorted_raw(n, (0..n).filter(|&i| rows[i][c]).collect()))
        .filter(|x| x.len() >= 2)
        .collect();
    if sets.is_empty() {
        return Ok(true);
    }
    Ok(reduce_expand(n, &sets)?.succeeded())
}

/// A `π` with every `X_jπ` an interval, found by reductions alone, or
/// `None` when the sets lack the consecutive-ones property.
pub fn c1p_renumbering(n: usize, sets: &[SpecSet]) -> Result<Option<Permutation>> {
    check_sets(n, sets)?;
    let mut tree = PqTree::universal(n)?;
    for x in sets {
        match tree.reduce(x) {
            Some(t) => tree = t,
            None => return Ok(None),
        }
    }
    Ok(Some(tree.frontier().inverse()))
}

/// Recovers an ascending chain to an interval instance from a successful
/// trace over `instance`'s sets.
///
/// `π_m` is the inverse of `T_m`'s stored frontier. Working down from
/// `j = m`, each `π_j ∈ Π'_j` is split through the flattened `T_{j−1}` into
/// `π_{j−1} ∈ Π_{j−1}` and `σ_{j−1}`.
pub fn recover_chain(trace: &ReduceExpandTrace, instance: &Instance) -> Result<ChainDescription> {
    let m = instance.m();
    if !trace.succeeded() || trace.len() != m {
        return Err(Error::InvalidChain("the trace does not cover every set".into()));
    }
    if m == 0 {
        return Ok(ChainDescription::identity(instance.n(), 0));
    }
    let mut pi = trace.tree(m).expect("T_m").frontier().inverse();
    let mut sigmas = Vec::with_capacity(m - 1);
    for j in (2..=m).rev() {
        let previous = trace.tree(j - 1).expect("T_{j-1}");
        let flat = trace.expanded(j).expect("T'_j");
        let (pi_prev, sigma) = previous.decompose_with_flattened(flat, instance.set(j - 1), &pi)?;
        sigmas.push(sigma);
        pi = pi_prev;
    }
    sigmas.reverse();
    Ok(ChainDescription { pi1: pi, sigmas })
}

/// How a weak-C1P instance was settled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSolution {
    pub chain: ChainDescription,
    /// The interval instance at the end of the chain.
    pub end: Instance,
    pub decision: Decision,
}

/// Decides a nice instance through a recovered chain; `None` if it is not
/// nice. Sets with fewer than two elements are handled transparently.
pub fn solve_wppsg2(instance: &Instance) -> Result<Option<ChainSolution>> {
    let (norm, log) = instance.normalize();
    if norm.m() == 0 {
        let decision = sort_and_factor(&norm);
        let decision = restore(decision, &log, instance.n());
        return Ok(Some(ChainSolution {
            chain: ChainDescription::identity(instance.n(), 0),
            end: norm,
            decision,
        }));
    }
    let trace = reduce_expand(norm.n(), norm.sets())?;
    if !trace.succeeded() {
        return Ok(None);
    }
    let chain = recover_chain(&trace, &norm)?;
    let end = apply_chain(&norm, &chain)?;
    debug_assert!(end.is_interval_instance());
    let decision = match sort_and_factor(&end) {
        Decision::Yes(w) => Decision::Yes(pull_back_witness(&w, &chain, &norm)?),
        Decision::No => Decision::No,
    };
    Ok(Some(ChainSolution {
        chain,
        end,
        decision: restore(decision, &log, instance.n()),
    }))
}

/// Decides an instance whose sets have the consecutive-ones property by
/// renumbering; `None` if they lack it.
pub fn solve_wppsg1(instance: &Instance) -> Result<Option<(Permutation, Decision)>> {
    let (norm, log) = instance.normalize();
    let pi = if norm.m() == 0 {
        Permutation::identity(norm.n())
    } else {
        match c1p_renumbering(norm.n(), norm.sets())? {
            Some(pi) => pi,
            None => return Ok(None),
        }
    };
    let renumbered = renumber(&norm, &pi)?;
    let decision = match sort_and_factor(&renumbered) {
        // σ'_j ∈ S_{X_jπ} pulls back to πσ'_jπ⁻¹ ∈ S_{X_j}.
        Decision::Yes(w) => {
            let pi_inv = pi.inverse();
            let factors = w.factors.iter().map(|s| pi.then(s).then(&pi_inv)).collect();
            Decision::Yes(crate::instance::Witness { factors })
        }
        Decision::No => Decision::No,
    };
    Ok(Some((pi, restore(decision, &log, instance.n()))))
}

fn restore(decision: Decision, log: &crate::instance::NormalizationLog, n: usize) -> Decision {
    match decision {
        Decision::Yes(w) => Decision::Yes(log.restore(w, n)),
        Decision::No => Decision::No,
    }
}
