//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wppsg::generate::{generate, GenOptions, InstanceClass};
use wppsg::interval::{expand_intervals, run_sorting_strategy, solve_wppsg0};
use wppsg::oracle::{self, PermSet};
use wppsg::solve::{solve, SolveOptions};
use wppsg::wc1p::{apply_chain, c1p_renumbering, is_nice, reduce_expand, solve_wppsg2};
use wppsg::{
    verify_witness, ChainDescription, Classification, Decision, Instance, Method, Permutation, PqTree, SpecSet,
    Verdict, Witness,
};

type Outcome = Result<String, String>;

fn p(images: &[usize]) -> Permutation {
    Permutation::from_images(images).unwrap()
}

fn sets(n: usize, s: &[&[usize]]) -> Vec<SpecSet> {
    s.iter().map(|e| SpecSet::new(n, e.iter().copied()).unwrap()).collect()
}

fn inst(n: usize, s: &[&[usize]], tau: &[usize]) -> Instance {
    Instance::new(n, sets(n, s), p(tau)).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn elements(xs: &[SpecSet]) -> Vec<Vec<usize>> {
    xs.iter().map(SpecSet::elements).collect()
}

fn replay() -> Outcome {
    let start = Instant::now();

    let reduction = inst(5, &[&[2, 3], &[1, 2], &[3, 4, 5], &[1, 2, 3, 4]], &[4, 5, 3, 2, 1]);
    let expanded = expand_intervals(&reduction).map_err(|e| e.to_string())?;
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
    ensure(elements(expanded.sets()) == want, || {
        "reduction: expansion sequence differs".into()
    })?;
    ensure(solve_wppsg0(&reduction).unwrap().is_yes(), || {
        "reduction: not YES".into()
    })?;

    let v2 = inst(5, &[&[1, 3], &[4, 5], &[1, 5], &[2, 3, 4]], &[2, 4, 5, 1, 3]);
    let shown = [
        [2, 4, 5, 1, 3],
        [5, 4, 2, 1, 3],
        [5, 4, 2, 3, 1],
        [1, 4, 2, 3, 5],
        [1, 2, 3, 4, 5],
    ];
    for (j, x) in v2.sets().iter().enumerate() {
        let (a, b) = (p(&shown[j]), p(&shown[j + 1]));
        let agree = (1..=5).all(|i| x.contains(i) || a.image(i) == b.image(i));
        ensure(agree, || {
            format!("V2: step {} changes a position outside X_{}", j + 1, j + 1)
        })?;
    }
    let sigma = Witness {
        factors: vec![
            p(&[3, 2, 1, 4, 5]),
            p(&[1, 2, 3, 5, 4]),
            p(&[5, 2, 3, 4, 1]),
            p(&[1, 4, 2, 3, 5]),
        ],
    };
    ensure(verify_witness(&v2, &sigma), || "V2: displayed factors rejected".into())?;
    let from_sigma = sigma.transitions(v2.tau());
    ensure(from_sigma == shown.iter().map(|t| p(t)).collect::<Vec<_>>(), || {
        "V2: factors do not reproduce the displayed chain".into()
    })?;
    let r = solve(&v2, &SolveOptions::default()).unwrap();
    ensure(r.verdict == Verdict::Yes, || "V2: solver did not answer YES".into())?;

    let trace = run_sorting_strategy(&v2);
    ensure(trace.steps[..4].iter().all(|t| *t == p(&[2, 4, 5, 1, 3])), || {
        "sorting strategy: early steps differ".into()
    })?;
    ensure(*trace.last() == p(&[2, 1, 4, 5, 3]) && !trace.successful(), || {
        format!("sorting strategy: ended at {}", trace.last())
    })?;

    let sorting = inst(5, &[&[1, 2], &[2, 3], &[1, 2]], &[3, 5, 1, 4, 2]);
    let steps = run_sorting_strategy(&sorting).steps;
    let want = [[3, 5, 1, 4, 2], [3, 5, 1, 4, 2], [3, 1, 5, 4, 2], [1, 3, 5, 4, 2]];
    ensure(steps == want.iter().map(|t| p(t)).collect::<Vec<_>>(), || {
        "sorting: step sequence differs".into()
    })?;
    let small = inst(3, &[&[1, 2], &[2, 3], &[1, 2]], &[2, 3, 1]);
    ensure(run_sorting_strategy(&small).successful(), || {
        "sorting: reduced tuple not sorted".into()
    })?;

    let c1p = inst(5, &[&[1, 4], &[2, 4], &[2, 3, 5], &[1, 2, 4, 5]], &[1, 3, 4, 2, 5]);
    let raw = run_sorting_strategy(&c1p);
    let want = [
        [1, 3, 4, 2, 5],
        [1, 3, 4, 2, 5],
        [1, 2, 4, 3, 5],
        [1, 2, 4, 3, 5],
        [1, 2, 4, 3, 5],
    ];
    ensure(raw.steps == want.iter().map(|t| p(t)).collect::<Vec<_>>(), || {
        "C1P: raw trace differs".into()
    })?;
    let r = solve(&c1p, &SolveOptions::default()).unwrap();
    ensure(
        r.verdict == Verdict::Yes && r.method == Some(Method::RenumberSorting),
        || format!("C1P: got {} via {:?}", r.verdict, r.method),
    )?;
    let known_renumbering = p(&[1, 3, 5, 2, 4]);
    let renumbered: Vec<SpecSet> = c1p
        .sets()
        .iter()
        .map(|x| x.image_under(&known_renumbering).unwrap())
        .collect();
    ensure(
        elements(&renumbered) == vec![vec![1, 2], vec![2, 3], vec![3, 4, 5], vec![1, 2, 3, 4]],
        || "C1P: renumbered sets differ".into(),
    )?;
    ensure(oracle::c1p(5, c1p.sets()).unwrap(), || "C1P: oracle says no C1P".into())?;
    let found = c1p_renumbering(5, c1p.sets())
        .unwrap()
        .ok_or("C1P: no renumbering found")?;
    ensure(
        c1p.sets().iter().all(|x| x.image_under(&found).unwrap().is_interval()),
        || "C1P: found renumbering is wrong".into(),
    )?;

    let star = inst(5, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5]], &[1, 2, 3, 4, 5]);
    ensure(!oracle::c1p(5, star.sets()).unwrap(), || {
        "WC1P: oracle reports C1P".into()
    })?;
    ensure(c1p_renumbering(5, star.sets()).unwrap().is_none(), || {
        "WC1P: renumbering found".into()
    })?;
    ensure(is_nice(&star), || "WC1P: not nice".into())?;
    ensure(wppsg::classify(&star) == Classification::Wc1p, || {
        "WC1P: wrong class".into()
    })?;
    let chain = ChainDescription {
        pi1: Permutation::identity(5),
        sigmas: vec![
            Permutation::transposition(5, 1, 2).unwrap(),
            Permutation::transposition(5, 2, 3).unwrap(),
            Permutation::transposition(5, 3, 4).unwrap(),
        ],
    };
    let end = apply_chain(&star, &chain).map_err(|e| format!("WC1P: chain invalid: {e}"))?;
    ensure(
        elements(end.sets()) == vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5]],
        || "WC1P: end-of-chain sets differ".into(),
    )?;

    let t: PqTree = "Q(P(1,4),P(Q(2,7,5),9),Q(8,3,6))".parse().unwrap();
    ensure(t.to_string().parse::<PqTree>().unwrap() == t, || {
        "nine-leaf tree: round trip".into()
    })?;
    let x = SpecSet::new(9, [2, 5, 7, 9]).unwrap();
    let flat = t.flatten(&x).unwrap();
    ensure(flat.to_string() == "Q(P(1,4),P(2,7,5,9),Q(8,3,6))", || {
        format!("nine-leaf tree: flatten gave {flat}")
    })?;
    let front_pp = p(&[6, 3, 8, 5, 2, 9, 7, 4, 1]);
    let front_pi = p(&[6, 3, 8, 2, 7, 5, 9, 4, 1]);
    let f_pp = flat
        .solve_consistency(&front_pp)
        .ok_or("nine-leaf tree: F'' not equivalent to F")?;
    let t_p = t.solve_consistency(&front_pi).ok_or("nine-leaf tree: T' not equivalent to T")?;
    let f_p = flat
        .solve_consistency(&front_pi)
        .ok_or("nine-leaf tree: F' not equivalent to F")?;
    ensure(
        f_pp.frontier() == front_pp && t_p.frontier() == front_pi && f_p.frontier() == front_pi,
        || "nine-leaf tree: frontiers differ".into(),
    )?;
    let (pi, sigma) = t.decompose_through_flatten(&x, &front_pp.inverse()).unwrap();
    ensure(pi == front_pi.inverse(), || format!("nine-leaf tree: pi is {pi}"))?;
    ensure(pi.compose(&sigma).unwrap() == front_pp.inverse(), || {
        "nine-leaf tree: pi sigma != pi'".into()
    })?;

    let elapsed = start.elapsed();
    ensure(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "6 worked examples and the nine-leaf flatten reproduced in {:.1} ms",
        elapsed.as_secs_f64() * 1e3
    ))
}

/// Witnesses checked across criteria, for the witness-integrity line.
#[derive(Default)]
struct Witnesses {
    checked: usize,
    rejected: Vec<String>,
}

impl Witnesses {
    fn record(&mut self, label: impl FnOnce() -> String, instance: &Instance, w: Option<&Witness>) {
        self.checked += 1;
        if !w.is_some_and(|w| verify_witness(instance, w)) {
            self.rejected.push(label());
        }
    }
}

fn sorting_on_yes(ws: &mut Witnesses) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    for k in 0..1000u64 {
        let opts = GenOptions {
            n: rng.gen_range(2..=50),
            m: rng.gen_range(1..=50),
            class: InstanceClass::Interval,
            yes: true,
            seed: k,
        };
        let i = generate(&opts).unwrap();
        if !run_sorting_strategy(&i).successful() {
            failures.push(k);
        }
        let d = solve_wppsg0(&i).unwrap();
        ws.record(|| format!("interval seed {k}"), &i, d.witness());
    }
    ensure(failures.is_empty(), || {
        format!(
            "{} failures, first seeds {:?}",
            failures.len(),
            &failures[..failures.len().min(5)]
        )
    })?;
    Ok("1000/1000 interval YES-instances sorted to the identity".into())
}

fn oracle_equivalence(ws: &mut Witnesses) -> Outcome {
    let mut summary = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for class in [
        InstanceClass::Interval,
        InstanceClass::C1p,
        InstanceClass::Wc1p,
        InstanceClass::Any,
    ] {
        let cases: Vec<GenOptions> = (0..600u64)
            .map(|k| GenOptions {
                n: rng.gen_range(2..=6),
                m: rng.gen_range(1..=5),
                class,
                yes: rng.gen_bool(0.5),
                seed: k,
            })
            .collect();
        let results: Vec<_> = cases
            .par_iter()
            .map(|o| {
                let i = generate(o).unwrap();
                let r = solve(&i, &SolveOptions::default()).unwrap();
                let truth = oracle::membership(&i).unwrap();
                (i, r, truth)
            })
            .collect();
        let mut yes = 0;
        for (k, (i, r, truth)) in results.iter().enumerate() {
            if (r.verdict == Verdict::Yes) != *truth || r.verdict == Verdict::Unsupported {
                return Err(format!("{class} seed {k}: solver {} but oracle {truth}", r.verdict));
            }
            if r.verdict == Verdict::Yes {
                yes += 1;
                ws.record(|| format!("{class} seed {k}"), i, r.witness.as_ref());
            }
        }
        summary.push(format!("{class} {}/{} ({yes} YES)", results.len(), results.len()));
    }
    Ok(format!("matches oracle: {}", summary.join(", ")))
}

fn all_trees() -> Vec<PqTree> {
    (2..=6).flat_map(oracle::all_trees).collect()
}

fn subsets(n: usize) -> impl Iterator<Item = SpecSet> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() >= 2)
        .map(move |m| SpecSet::new(n, (1..=n).filter(|b| m >> (b - 1) & 1 == 1)).unwrap())
}

/// `{πσ : π ∈ CONSISTENT⁻¹(T), σ ∈ S_{Xπ}}`. `πσ` ranges over the
/// permutations that agree with `π` outside `X`, so membership reduces to
/// matching the restriction to the complement of `X`.
fn expanded_set(inverse_cons: &PermSet, x: &SpecSet) -> PermSet {
    let n = x.universe();
    let outside: Vec<usize> = (1..=n).filter(|&i| !x.contains(i)).collect();
    let key = |pi: &Permutation| outside.iter().map(|&i| pi.image(i)).collect::<Vec<_>>();
    let keys: HashSet<Vec<usize>> = inverse_cons.iter().map(|pi| key(&pi)).collect();
    oracle::all_permutations(n)
        .filter(|pi| keys.contains(&key(pi)))
        .collect()
}

fn flatten_set_equation(trees: &[PqTree]) -> Outcome {
    let results: Vec<(usize, Vec<String>)> = trees
        .par_iter()
        .map(|t| {
            let inverse_cons = oracle::consistent(t).unwrap().inverses();
            let mut checked = 0;
            let mut bad = Vec::new();
            for x in subsets(t.degree()) {
                if t.locate_x_structure(&x).is_err() {
                    continue;
                }
                checked += 1;
                let ok = t
                    .flatten(&x)
                    .is_ok_and(|f| oracle::consistent(&f).unwrap().inverses() == expanded_set(&inverse_cons, &x));
                if !ok {
                    bad.push(format!("{t} with {x}"));
                }
            }
            (checked, bad)
        })
        .collect();
    let pairs: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.1).collect();
    ensure(bad.is_empty(), || format!("{} mismatches, first {}", bad.len(), bad[0]))?;
    Ok(format!("{} trees, {pairs} (tree, X) pairs, 0 mismatches", trees.len()))
}

fn consistency_vs_enumeration(trees: &[PqTree]) -> Outcome {
    let bad: Vec<String> = trees
        .par_iter()
        .flat_map_iter(|t| {
            let set = oracle::consistent(t).unwrap();
            oracle::all_permutations(t.degree()).filter_map(move |pi| {
                let ok = match t.solve_consistency(&pi) {
                    Some(s) => set.contains(&pi) && s.frontier() == pi,
                    None => !set.contains(&pi),
                };
                (!ok).then(|| format!("{t} with {pi}"))
            })
        })
        .collect();
    let pairs: usize = trees.iter().map(|t| (1..=t.degree()).product::<usize>()).sum();
    ensure(bad.is_empty(), || format!("{} mismatches, first {}", bad.len(), bad[0]))?;
    Ok(format!(
        "{} trees, {pairs} (tree, permutation) pairs, 0 mismatches",
        trees.len()
    ))
}

fn representation_invariant(ws: &mut Witnesses) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut steps = 0;
    let mut nice = 0;
    for k in 0..200u64 {
        // Half unrestricted families, half nice ones, so every step is
        // exercised on both outcomes.
        let class = if k % 2 == 0 {
            InstanceClass::Any
        } else {
            InstanceClass::Wc1p
        };
        let opts = GenOptions {
            n: rng.gen_range(2..=6),
            m: rng.gen_range(1..=4),
            class,
            yes: true,
            seed: k,
        };
        let i = generate(&opts).unwrap();
        let n = i.n();
        let pis = oracle::pi_sets(n, i.sets()).unwrap();
        let trace = reduce_expand(n, i.sets()).unwrap();
        ensure(oracle::consistent(trace.tree(0).unwrap()).unwrap().is_full(), || {
            format!("family {k}: T_0 is not universal")
        })?;
        for (j, (pi_prime, pi)) in pis.iter().enumerate() {
            let j = j + 1;
            if pi_prime.is_empty() {
                break;
            }
            let tp = trace.expanded(j).ok_or_else(|| format!("family {k}: T'_{j} missing"))?;
            ensure(&oracle::consistent(tp).unwrap().inverses() == pi_prime, || {
                format!("family {k}: T'_{j} = {tp} does not represent the expanded set")
            })?;
            match trace.tree(j) {
                Some(t) => ensure(&oracle::consistent(t).unwrap().inverses() == pi, || {
                    format!("family {k}: T_{j} = {t} does not represent the filtered set")
                })?,
                None => ensure(pi.is_empty() && trace.failure_index() == Some(j), || {
                    format!("family {k}: T_{j} missing but the set is nonempty")
                })?,
            }
            steps += 1;
        }
        ensure(trace.succeeded() == !pis.last().unwrap().1.is_empty(), || {
            format!("family {k}: success flag wrong")
        })?;
        if let Some(solution) = solve_wppsg2(&i).unwrap() {
            nice += 1;
            match solution.decision {
                Decision::Yes(w) => ws.record(|| format!("pulled back, family {k}"), &i, Some(&w)),
                Decision::No => return Err(format!("family {k}: constructed YES answered NO")),
            }
        }
        let r = solve(&i, &SolveOptions::default()).unwrap();
        ws.record(|| format!("family {k}"), &i, r.witness.as_ref());
    }
    Ok(format!("200 families, {steps} steps checked, {nice} nice"))
}

/// Successive ratios of the mean total time along one axis of the grid.
fn total_ratios(ns: &[usize], ms: &[usize]) -> Result<Vec<f64>, String> {
    let rows = wppsg::scaling::bench_grid(ns, ms, 9, 8).map_err(|e| e.to_string())?;
    let totals: Vec<f64> = rows.iter().filter(|r| r.phase == "total").map(|r| r.mean_ms).collect();
    Ok(totals.windows(2).map(|w| w[1] / w[0]).collect())
}

fn show(ratios: &[f64]) -> String {
    ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>().join(", ")
}

fn scaling() -> Outcome {
    let start = Instant::now();
    let by_n = total_ratios(&[200, 400, 800, 1600, 3200], &[32])?;
    let by_m = total_ratios(&[800], &[8, 16, 32, 64])?;
    let elapsed = start.elapsed();
    let detail = format!(
        "m=32 n-doubling ratios [{}]; n=800 m-doubling ratios [{}]; {:.1} s",
        show(&by_n),
        show(&by_m),
        elapsed.as_secs_f64()
    );
    ensure(
        by_n.iter().chain(&by_m).all(|&r| r <= 3.0) && elapsed.as_secs() < 120,
        || detail.clone(),
    )?;
    Ok(detail)
}

fn run(report: &mut Vec<(usize, &'static str, Outcome)>, k: usize, name: &'static str, f: impl FnOnce() -> Outcome) {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("[{tag}] {k}. {name}: {detail}");
    report.push((k, name, outcome));
}

fn main() -> ExitCode {
    let mut report = Vec::new();
    let mut ws = Witnesses::default();
    let trees = all_trees();
    run(&mut report, 1, "worked-example replay", replay);
    run(&mut report, 2, "sorting strategy on YES interval instances", || {
        sorting_on_yes(&mut ws)
    });
    run(&mut report, 3, "oracle equivalence per class", || {
        oracle_equivalence(&mut ws)
    });
    run(&mut report, 4, "flatten set equation, trees up to 6 leaves", || {
        flatten_set_equation(&trees)
    });
    run(
        &mut report,
        5,
        "consistency vs enumeration, trees up to 6 leaves",
        || consistency_vs_enumeration(&trees),
    );
    run(&mut report, 6, "reduce-expand representation invariant", || {
        representation_invariant(&mut ws)
    });
    run(&mut report, 7, "witness integrity", || {
        ensure(ws.rejected.is_empty(), || {
            format!(
                "{} of {} rejected, first {}",
                ws.rejected.len(),
                ws.checked,
                ws.rejected[0]
            )
        })?;
        Ok(format!("{} witnesses verified", ws.checked))
    });
    run(&mut report, 8, "scaling sanity", scaling);
    let failed = report.iter().filter(|r| r.2.is_err()).count();
    println!("{} of {} criteria passed", report.len() - failed, report.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
