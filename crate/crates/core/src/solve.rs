//! Classification and the top-level solver.

use std::fmt;
use std::time::{Duration, Instant};

use crate::error::Result;
use crate::instance::{Instance, Witness};
use crate::interval::{run_sorting_strategy, sort_and_factor, Decision, SortingTrace};
use crate::oracle;
use crate::perm::Permutation;
use crate::wc1p::{self, ChainDescription, ReduceExpandTrace};

/// The tightest subclass an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Interval,
    C1p,
    Wc1p,
    NotNice,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Interval => "interval",
            Self::C1p => "c1p",
            Self::Wc1p => "wc1p",
            Self::NotNice => "not-nice",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Sorting,
    RenumberSorting,
    ChainSorting,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Sorting => "sorting",
            Self::RenumberSorting => "renumber+sorting",
            Self::ChainSorting => "chain+sorting",
            Self::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unsupported,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Yes => "YES",
            Self::No => "NO",
            Self::Unsupported => "UNSUPPORTED",
        })
    }
}

/// Intermediate results of the method that settled the instance, kept when
/// [`SolveOptions::keep_trace`] is set. They refer to the instance with
/// its sets of size below two removed.
#[derive(Debug, Clone)]
pub enum Details {
    Sorting {
        trace: SortingTrace,
    },
    Renumber {
        pi: Permutation,
        trace: SortingTrace,
    },
    Chain {
        reduce_expand: ReduceExpandTrace,
        chain: ChainDescription,
        trace: SortingTrace,
    },
    Oracle,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub classification: Classification,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// `None` for unsupported instances.
    pub method: Option<Method>,
    pub timings: Vec<(&'static str, Duration)>,
    pub details: Option<Details>,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Largest degree handed to the brute-force oracle.
    pub oracle_cap: usize,
    /// Decide with the oracle whatever the classification.
    pub force_oracle: bool,
    pub keep_trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            oracle_cap: oracle::MEMBERSHIP_CAP,
            force_oracle: false,
            keep_trace: false,
        }
    }
}

/// Reports the first of interval, c1p, wc1p that applies, else not-nice.
pub fn classify(instance: &Instance) -> Classification {
    let (norm, _) = instance.normalize();
    if norm.is_interval_instance() {
        Classification::Interval
    } else if matches!(wc1p::c1p_renumbering(norm.n(), norm.sets()), Ok(Some(_))) {
        Classification::C1p
    } else if wc1p::is_nice(&norm) {
        Classification::Wc1p
    } else {
        Classification::NotNice
    }
}

fn from_decision(decision: Decision) -> (Verdict, Option<Witness>) {
    match decision {
        Decision::Yes(w) => (Verdict::Yes, Some(w)),
        Decision::No => (Verdict::No, None),
    }
}

/// Classifies and decides `instance`; instances that are not nice go to the
/// oracle when `n ≤ oracle_cap` and are unsupported otherwise.
pub fn solve(instance: &Instance, options: &SolveOptions) -> Result<SolveReport> {
    let mut timings = Vec::new();
    let start = Instant::now();
    let (norm, log) = instance.normalize();
    let n = instance.n();

    let (classification, decision, method, details) = if norm.is_interval_instance() {
        timings.push(("classify", start.elapsed()));
        let t = Instant::now();
        let decision = sort_and_factor(&norm);
        timings.push(("sorting", t.elapsed()));
        let details = options.keep_trace.then(|| Details::Sorting {
            trace: run_sorting_strategy(&norm),
        });
        let decision = match decision {
            Decision::Yes(w) => Decision::Yes(log.restore(w, n)),
            Decision::No => Decision::No,
        };
        (Classification::Interval, Some(decision), Method::Sorting, details)
    } else if let Some(pi) = wc1p::c1p_renumbering(norm.n(), norm.sets())? {
        timings.push(("classify", start.elapsed()));
        let t = Instant::now();
        let (_, decision) = wc1p::solve_wppsg1(instance)?.expect("c1p sets");
        timings.push(("renumber+sorting", t.elapsed()));
        let details = if options.keep_trace {
            let renumbered = wc1p::renumber(&norm, &pi)?;
            Some(Details::Renumber {
                trace: run_sorting_strategy(&renumbered),
                pi,
            })
        } else {
            None
        };
        (Classification::C1p, Some(decision), Method::RenumberSorting, details)
    } else {
        let trace = wc1p::reduce_expand(norm.n(), norm.sets())?;
        timings.push(("classify", start.elapsed()));
        if trace.succeeded() {
            let t = Instant::now();
            let solution = wc1p::solve_wppsg2(instance)?.expect("nice instance");
            timings.push(("chain+sorting", t.elapsed()));
            let details = options.keep_trace.then(|| Details::Chain {
                trace: run_sorting_strategy(&solution.end),
                chain: solution.chain.clone(),
                reduce_expand: trace,
            });
            (
                Classification::Wc1p,
                Some(solution.decision),
                Method::ChainSorting,
                details,
            )
        } else if n <= options.oracle_cap {
            (Classification::NotNice, None, Method::Oracle, None)
        } else {
            timings.push(("total", start.elapsed()));
            return Ok(SolveReport {
                classification: Classification::NotNice,
                verdict: Verdict::Unsupported,
                witness: None,
                method: None,
                timings,
                details: None,
            });
        }
    };

    let (decision, method, details) = match decision {
        Some(d) if !options.force_oracle => (d, method, details),
        _ => {
            let t = Instant::now();
            let w = oracle::witness_with_cap(instance, options.oracle_cap)?;
            timings.push(("oracle", t.elapsed()));
            let d = w.map_or(Decision::No, Decision::Yes);
            (d, Method::Oracle, options.keep_trace.then_some(Details::Oracle))
        }
    };
    timings.push(("total", start.elapsed()));
    let (verdict, witness) = from_decision(decision);
    debug_assert!(witness.as_ref().is_none_or(|w| crate::verify_witness(instance, w)));
    Ok(SolveReport {
        classification,
        verdict,
        witness,
        method: Some(method),
        timings,
        details,
    })
}
