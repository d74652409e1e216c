//! Instances whose specification sets are integer intervals.
//!
//! The sorting strategy replaces `τ_{j−1}` by the unique `X_j`-sorted
//! permutation that agrees with it outside `X_j`. On interval instances it
//! reaches the identity exactly when the instance is a YES-instance, and the
//! factors `σ_j = τ_{j−1} τ_j⁻¹` of the run form a witness.

use crate::error::{Error, Result};
use crate::instance::{Instance, Witness};
use crate::perm::{bucket_sort_positions, Permutation, SpecSet, TranspositionSeq};

/// The adjacent transpositions `S', S''` over `[lo:hi]`:
/// `⟨lo,lo+1⟩ … ⟨hi−1,hi⟩`, then the same for `[lo:hi−1]`, and so on.
/// Every permutation of the interval is the product of a subsequence.
pub fn universal_sequence(lo: usize, hi: usize) -> Result<TranspositionSeq> {
    if lo > hi {
        return Err(Error::EmptyInterval { lo, hi });
    }
    let k = hi - lo + 1;
    let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
    for top in (lo + 1..=hi).rev() {
        pairs.extend((lo..top).map(|i| (i, i + 1)));
    }
    Ok(TranspositionSeq { pairs })
}

fn interval_bounds(x: &SpecSet, index: usize) -> Result<(usize, usize)> {
    let e = x.elements();
    match (e.first(), e.last()) {
        (Some(&lo), Some(&hi)) if x.is_interval() => Ok((lo, hi)),
        (None, _) | (_, None) => Ok((1, 0)),
        _ => Err(Error::NotAnInterval { index }),
    }
}

/// Replaces every interval `X_j` by the 2-sets of its universal sequence.
pub fn expand_intervals(instance: &Instance) -> Result<Instance> {
    let n = instance.n();
    let mut sets = Vec::new();
    for (j, x) in instance.sets().iter().enumerate() {
        let (lo, hi) = interval_bounds(x, j + 1)?;
        if lo > hi {
            continue;
        }
        sets.extend(universal_sequence(lo, hi)?.to_spec_sets(n)?);
    }
    Ok(Instance::from_parts(n, sets, instance.tau().clone()))
}

/// `τ_0, …, τ_m` as chosen by the sorting strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortingTrace {
    pub steps: Vec<Permutation>,
}

impl SortingTrace {
    pub fn last(&self) -> &Permutation {
        self.steps.last().expect("a trace holds at least tau_0")
    }

    pub fn successful(&self) -> bool {
        self.last().is_identity()
    }

    /// One `tau_j <images…>` line per step.
    pub fn to_text(&self) -> String {
        self.steps
            .iter()
            .enumerate()
            .map(|(j, t)| crate::format::perm_line(&format!("tau_{j}"), t))
            .collect()
    }
}

/// Runs the sorting strategy on any instance; the sets need not be intervals.
pub fn run_sorting_strategy(instance: &Instance) -> SortingTrace {
    let mut steps = Vec::with_capacity(instance.m() + 1);
    let mut current = instance.tau().raw().to_vec();
    let mut marks = vec![false; instance.n()];
    steps.push(Permutation::from_raw(current.clone()));
    for x in instance.sets() {
        bucket_sort_positions(&mut current, x.raw(), &mut marks);
        steps.push(Permutation::from_raw(current.clone()));
    }
    SortingTrace { steps }
}

/// Outcome of a decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(Witness),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Decision::Yes(w) => Some(w),
            Decision::No => None,
        }
    }
}

/// Decides an interval instance with the sorting strategy.
///
/// Keeps two rolling permutations plus the inverse of the current one; each
/// step costs `O(n)`.
pub fn solve_wppsg0(instance: &Instance) -> Result<Decision> {
    for (j, x) in instance.sets().iter().enumerate() {
        if !x.is_interval() {
            return Err(Error::NotAnInterval { index: j + 1 });
        }
    }
    Ok(sort_and_factor(instance))
}

/// Sorting strategy with witness extraction, for any instance. Sound on
/// every instance; complete on interval instances.
pub(crate) fn sort_and_factor(instance: &Instance) -> Decision {
    let n = instance.n();
    let mut current = instance.tau().raw().to_vec();
    let mut inverse = instance.tau().inverse().raw().to_vec();
    let mut marks = vec![false; n];
    let mut previous_values = Vec::new();
    let mut factors = Vec::with_capacity(instance.m());
    for x in instance.sets() {
        let positions = x.raw();
        previous_values.clear();
        previous_values.extend(positions.iter().map(|&i| current[i]));
        bucket_sort_positions(&mut current, positions, &mut marks);
        for &i in positions {
            inverse[current[i]] = i;
        }
        // σ_j = τ_{j−1} τ_j⁻¹ moves only points of X_j.
        let mut sigma: Vec<usize> = (0..n).collect();
        for (&i, &v) in positions.iter().zip(&previous_values) {
            sigma[i] = inverse[v];
        }
        factors.push(Permutation::from_raw(sigma));
    }
    if current.iter().enumerate().all(|(i, &v)| i == v) {
        Decision::Yes(Witness { factors })
    } else {
        Decision::No
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify_witness;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    fn inst(n: usize, sets: &[&[usize]], tau: &[usize]) -> Instance {
        Instance::new(
            n,
            sets.iter()
                .map(|e| SpecSet::new(n, e.iter().copied()).unwrap())
                .collect(),
            p(tau),
        )
        .unwrap()
    }

    #[test]
    fn universal_sequence_shape() {
        let s = universal_sequence(1, 5).unwrap();
        assert_eq!(
            s.pairs,
            vec![
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (1, 2),
                (2, 3),
                (3, 4),
                (1, 2),
                (2, 3),
                (1, 2)
            ]
        );
        assert_eq!(universal_sequence(4, 5).unwrap().pairs, vec![(4, 5)]);
        assert!(universal_sequence(3, 3).unwrap().is_empty());
        assert_eq!(universal_sequence(4, 3), Err(Error::EmptyInterval { lo: 4, hi: 3 }));
    }

    #[test]
    fn universality_by_subsequence_enumeration() {
        let s = universal_sequence(1, 5).unwrap();
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..(1 << s.len()) {
            seen.insert(s.compose_selected(5, |k| mask >> k & 1 == 1).unwrap());
        }
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn expansion_of_reduction_example() {
        let i = inst(5, &[&[2, 3], &[1, 2], &[3, 4, 5], &[1, 2, 3, 4]], &[4, 5, 3, 2, 1]);
        let expanded = expand_intervals(&i).unwrap();
        let got: Vec<Vec<usize>> = expanded.sets().iter().map(SpecSet::elements).collect();
        let want: Vec<Vec<usize>> = [
            [2, 3],
            [1, 2],
            [3, 4],
            [4, 5],
            [3, 4],
            [1, 2],
            [2, 3],
            [3, 4],
            [1, 2],
            [2, 3],
            [1, 2],
        ]
        .iter()
        .map(|a| a.to_vec())
        .collect();
        assert_eq!(got, want);
        assert_eq!(expanded.tau(), i.tau());

        let pairs = inst(4, &[&[1, 2], &[3, 4], &[2, 3]], &[1, 2, 3, 4]);
        assert_eq!(expand_intervals(&pairs).unwrap().sets(), pairs.sets());

        let bad = inst(4, &[&[1, 2], &[1, 3]], &[1, 2, 3, 4]);
        assert_eq!(expand_intervals(&bad), Err(Error::NotAnInterval { index: 2 }));
    }

    #[test]
    fn sorting_strategy_examples() {
        let v2 = inst(5, &[&[1, 3], &[4, 5], &[1, 5], &[2, 3, 4]], &[2, 4, 5, 1, 3]);
        let trace = run_sorting_strategy(&v2);
        assert_eq!(trace.steps.len(), 5);
        for t in &trace.steps[..4] {
            assert_eq!(t, &p(&[2, 4, 5, 1, 3]));
        }
        assert_eq!(trace.last(), &p(&[2, 1, 4, 5, 3]));
        assert!(!trace.successful());

        let id = v2.with_tau(Permutation::identity(5)).unwrap();
        let trace = run_sorting_strategy(&id);
        assert!(trace.steps.iter().all(Permutation::is_identity));

        let c1p = inst(5, &[&[1, 4], &[2, 4], &[2, 3, 5], &[1, 2, 4, 5]], &[1, 3, 4, 2, 5]);
        let trace = run_sorting_strategy(&c1p);
        assert_eq!(trace.steps[2], p(&[1, 2, 4, 3, 5]));
        assert_eq!(trace.last(), &p(&[1, 2, 4, 3, 5]));
    }

    #[test]
    fn trace_text() {
        let i = inst(3, &[&[1, 2]], &[2, 1, 3]);
        assert_eq!(run_sorting_strategy(&i).to_text(), "tau_0 2 1 3\ntau_1 1 2 3\n");
    }

    #[test]
    fn solve_wppsg0_examples() {
        let i = inst(5, &[&[2, 3], &[1, 2], &[3, 4, 5], &[1, 2, 3, 4]], &[4, 5, 3, 2, 1]);
        let d = solve_wppsg0(&i).unwrap();
        assert!(verify_witness(&i, d.witness().expect("YES")));

        let id = i.with_tau(Permutation::identity(5)).unwrap();
        let d = solve_wppsg0(&id).unwrap();
        assert!(d.witness().unwrap().factors.iter().all(Permutation::is_identity));

        let no = inst(3, &[&[1, 2]], &[3, 2, 1]);
        assert_eq!(solve_wppsg0(&no).unwrap(), Decision::No);

        let scattered = inst(3, &[&[1, 3]], &[3, 2, 1]);
        assert_eq!(solve_wppsg0(&scattered), Err(Error::NotAnInterval { index: 1 }));
    }
}
