//! Phase timings of the weak-C1P pipeline on generated YES-instances.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::generate::{generate, GenOptions, InstanceClass};
use crate::interval::{sort_and_factor, Decision};
use crate::wc1p::{apply_chain, pull_back_witness, recover_chain, reduce_expand};

pub const PHASES: [&str; 6] = [
    "reduce_expand",
    "recover_chain",
    "apply_chain",
    "sorting",
    "pull_back",
    "total",
];

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTiming {
    pub n: usize,
    pub m: usize,
    pub phase: &'static str,
    pub mean_ms: f64,
    pub stddev_ms: f64,
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Times each phase once on one instance, in milliseconds, in [`PHASES`]
/// order.
fn run_once(n: usize, m: usize, seed: u64) -> Result<[f64; 6]> {
    let instance = generate(&GenOptions {
        n,
        m,
        class: InstanceClass::Wc1p,
        yes: true,
        seed,
    })?;
    let (norm, _) = instance.normalize();
    let begin = Instant::now();
    let t = Instant::now();
    let trace = reduce_expand(norm.n(), norm.sets())?;
    let t_reduce = ms(t);
    let t = Instant::now();
    let chain = recover_chain(&trace, &norm)?;
    let t_chain = ms(t);
    let t = Instant::now();
    let end = apply_chain(&norm, &chain)?;
    let t_apply = ms(t);
    let t = Instant::now();
    let decision = sort_and_factor(&end);
    let t_sort = ms(t);
    let t = Instant::now();
    let Decision::Yes(w) = decision else {
        return Err(Error::InvalidWitness("generated YES-instance answered NO".into()));
    };
    let w = std::hint::black_box(pull_back_witness(&w, &chain, &norm)?);
    let t_pull = ms(t);
    let total = ms(begin);
    debug_assert!(crate::verify_witness(&norm, &w));
    Ok([t_reduce, t_chain, t_apply, t_sort, t_pull, total])
}

/// Mean and sample standard deviation over `reps` seeded instances of each
/// phase. Repetitions run sequentially so they do not disturb each other.
pub fn time_wppsg2(n: usize, m: usize, reps: usize, seed: u64) -> Result<Vec<PhaseTiming>> {
    if reps == 0 {
        return Err(Error::Generation("reps must be at least 1".into()));
    }
    let mut samples = Vec::with_capacity(reps);
    for r in 0..reps {
        samples.push(run_once(n, m, seed.wrapping_add(r as u64))?);
    }
    Ok(PHASES
        .iter()
        .enumerate()
        .map(|(k, &phase)| {
            let mean = samples.iter().map(|s| s[k]).sum::<f64>() / reps as f64;
            let var = if reps > 1 {
                samples.iter().map(|s| (s[k] - mean).powi(2)).sum::<f64>() / (reps - 1) as f64
            } else {
                0.0
            };
            PhaseTiming {
                n,
                m,
                phase,
                mean_ms: mean,
                stddev_ms: var.sqrt(),
            }
        })
        .collect())
}

/// All `(n, m)` combinations, `n` varying slowest.
pub fn bench_grid(ns: &[usize], ms: &[usize], reps: usize, seed: u64) -> Result<Vec<PhaseTiming>> {
    let mut out = Vec::new();
    for &n in ns {
        for &m in ms {
            out.extend(time_wppsg2(n, m, reps, seed)?);
        }
    }
    Ok(out)
}

/// CSV with header `n,m,phase,mean_ms,stddev_ms`.
pub fn to_csv(rows: &[PhaseTiming]) -> String {
    let mut out = String::from("n,m,phase,mean_ms,stddev_ms\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{:.6},{:.6}\n",
            r.n, r.m, r.phase, r.mean_ms, r.stddev_ms
        ));
    }
    out
}
