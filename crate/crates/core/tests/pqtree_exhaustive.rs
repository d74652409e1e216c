use rayon::prelude::*;
use wppsg::oracle::{self, PermSet};
use wppsg::{PqTree, SpecSet, XStructure};

const MAX_LEAVES: usize = 5;

fn subsets(n: usize) -> Vec<SpecSet> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| SpecSet::new(n, (0..n).filter(|b| m >> b & 1 == 1).map(|b| b + 1)).unwrap())
        .collect()
}

fn keeps_contiguous(frontier: &wppsg::Permutation, x: &SpecSet) -> bool {
    let pos: Vec<usize> = (1..=frontier.degree())
        .filter(|&i| x.contains(frontier.image(i)))
        .collect();
    pos.last().unwrap() - pos[0] + 1 == pos.len()
}

fn trees() -> Vec<PqTree> {
    (1..=MAX_LEAVES).flat_map(oracle::all_trees).collect()
}

fn assert_proper(t: &PqTree) {
    let again: PqTree = t.to_string().parse().expect("output is proper");
    assert_eq!(&again, t);
}

#[test]
fn consistency_matches_enumeration() {
    trees().par_iter().for_each(|t| {
        let set = oracle::consistent(t).unwrap();
        for pi in oracle::all_permutations(t.degree()) {
            match t.solve_consistency(&pi) {
                Some(solved) => {
                    assert!(set.contains(&pi), "{t} accepted {pi}");
                    assert_eq!(solved.frontier(), pi);
                    assert!(oracle::equivalent(&solved, t));
                }
                None => assert!(!set.contains(&pi), "{t} rejected {pi}"),
            }
        }
    });
}

#[test]
fn reduce_matches_filtered_enumeration() {
    trees().par_iter().filter(|t| t.degree() >= 2).for_each(|t| {
        let all = oracle::consistent(t).unwrap();
        for x in subsets(t.degree()) {
            let want: Vec<_> = all.iter().filter(|f| keeps_contiguous(f, &x)).collect();
            match t.reduce(&x) {
                Some(r) => {
                    assert_proper(&r);
                    let got: Vec<_> = oracle::consistent(&r).unwrap().iter().collect();
                    assert_eq!(got, want, "reduce({t}, {x}) = {r}");
                }
                None => assert!(want.is_empty(), "reduce({t}, {x}) failed"),
            }
        }
    });
}

/// `{πσ : π ∈ CONSISTENT⁻¹(T), σ ∈ S_{Xπ}}`.
fn expanded(t: &PqTree, x: &SpecSet) -> PermSet {
    let mut out = PermSet::empty(t.degree());
    for f in oracle::consistent(t).unwrap().iter() {
        let pi = f.inverse();
        for sigma in oracle::stabilizer(&x.image_under(&pi).unwrap()) {
            out.insert(&pi.compose(&sigma).unwrap());
        }
    }
    out
}

#[test]
fn flatten_structure_and_decomposition() {
    trees().par_iter().filter(|t| t.degree() >= 2).for_each(|t| {
        let cons = oracle::consistent(t).unwrap();
        let inverse_cons = cons.inverses();
        for x in subsets(t.degree()) {
            let holds = cons.iter().all(|f| keeps_contiguous(&f, &x));
            let located = t.locate_x_structure(&x);
            assert_eq!(located.is_ok(), holds, "{t} {x}");
            if !holds {
                assert!(t.flatten(&x).is_err());
                continue;
            }
            match located.unwrap() {
                XStructure::Tree(id) => {
                    let mut leaves = t.subtree_leaves(id);
                    leaves.sort();
                    assert_eq!(leaves, x.elements());
                }
                XStructure::Forest { parent, children } => {
                    assert!(children.len() >= 2);
                    let mut leaves: Vec<usize> = t.children(parent)[children]
                        .iter()
                        .flat_map(|&c| t.subtree_leaves(c))
                        .collect();
                    leaves.sort();
                    assert_eq!(leaves, x.elements());
                }
            }
            let flat = t.flatten(&x).unwrap();
            assert_proper(&flat);
            let lhs = oracle::consistent(&flat).unwrap().inverses();
            assert_eq!(lhs, expanded(t, &x), "flatten({t}, {x}) = {flat}");
            for pi_prime in lhs.iter() {
                let (pi, sigma) = t.decompose_through_flatten(&x, &pi_prime).unwrap();
                assert!(inverse_cons.contains(&pi));
                assert!(sigma.in_stabilizer(&x.image_under(&pi).unwrap()));
                assert_eq!(pi.compose(&sigma).unwrap(), pi_prime);
            }
        }
    });
}
