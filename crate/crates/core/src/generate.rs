//! Seeded random instances for tests and benchmarks.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::perm::{Permutation, SpecSet};
use crate::wc1p::{apply_chain, ChainDescription};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceClass {
    /// Every set is an interval.
    Interval,
    /// Intervals under a random renumbering.
    C1p,
    /// Intervals moved by a random ascending chain; nice by construction.
    Wc1p,
    /// Arbitrary sets of size at least two.
    Any,
}

impl FromStr for InstanceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interval" => Ok(Self::Interval),
            "c1p" => Ok(Self::C1p),
            "wc1p" => Ok(Self::Wc1p),
            "any" => Ok(Self::Any),
            _ => Err(Error::Generation(format!(
                "unknown class `{s}`; expected interval, c1p, wc1p or any"
            ))),
        }
    }
}

impl fmt::Display for InstanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Interval => "interval",
            Self::C1p => "c1p",
            Self::Wc1p => "wc1p",
            Self::Any => "any",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOptions {
    pub n: usize,
    pub m: usize,
    pub class: InstanceClass,
    /// Build `τ_0` as a product of stabilizer elements, so the answer is YES.
    pub yes: bool,
    pub seed: u64,
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut img: Vec<usize> = (0..n).collect();
    img.shuffle(rng);
    Permutation::from_raw(img)
}

/// A uniform element of `S_X`.
pub fn random_stabilizer_element(rng: &mut impl Rng, x: &SpecSet) -> Permutation {
    let points = x.raw();
    let mut targets = points.to_vec();
    targets.shuffle(rng);
    let mut img: Vec<usize> = (0..x.universe()).collect();
    for (&p, &t) in points.iter().zip(&targets) {
        img[p] = t;
    }
    Permutation::from_raw(img)
}

fn random_interval(rng: &mut impl Rng, n: usize) -> SpecSet {
    let len = rng.gen_range(2..=n);
    let lo = rng.gen_range(0..=n - len);
    SpecSet::from_sorted_raw(n, (lo..lo + len).collect())
}

fn random_subset(rng: &mut impl Rng, n: usize) -> SpecSet {
    let len = rng.gen_range(2..=n);
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(len);
    SpecSet::from_raw_unsorted(n, all)
}

/// Instance sets of the requested class.
fn random_sets(rng: &mut impl Rng, n: usize, m: usize, class: InstanceClass) -> Vec<SpecSet> {
    match class {
        InstanceClass::Any => (0..m).map(|_| random_subset(rng, n)).collect(),
        InstanceClass::Interval => (0..m).map(|_| random_interval(rng, n)).collect(),
        InstanceClass::C1p => {
            let pi = random_permutation(rng, n);
            (0..m).map(|_| random_interval(rng, n).mapped(&pi)).collect()
        }
        InstanceClass::Wc1p => {
            // An ascending chain is invertible, so running a random one
            // backwards from an interval instance yields a nice instance:
            // apply it to the intervals and keep the result.
            let intervals: Vec<SpecSet> = (0..m).map(|_| random_interval(rng, n)).collect();
            let base = Instance::from_parts(n, intervals, Permutation::identity(n));
            let pi1 = random_permutation(rng, n);
            let mut pi = pi1.clone();
            let mut sigmas = Vec::with_capacity(m.saturating_sub(1));
            for x in &base.sets()[..m.saturating_sub(1)] {
                let s = random_stabilizer_element(rng, &x.mapped(&pi));
                pi = pi.then(&s);
                sigmas.push(s);
            }
            let chain = ChainDescription { pi1, sigmas };
            apply_chain(&base, &chain)
                .expect("valid by construction")
                .sets()
                .to_vec()
        }
    }
}

pub fn generate(options: &GenOptions) -> Result<Instance> {
    let GenOptions { n, m, class, yes, seed } = *options;
    if n < 2 {
        return Err(Error::Generation(format!("n must be at least 2, got {n}")));
    }
    if m < 1 {
        return Err(Error::Generation("m must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = random_sets(&mut rng, n, m, class);
    let tau = if yes {
        sets.iter().fold(Permutation::identity(n), |acc, x| {
            acc.then(&random_stabilizer_element(&mut rng, x))
        })
    } else {
        random_permutation(&mut rng, n)
    };
    Ok(Instance::from_parts(n, sets, tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::{classify, Classification};

    fn opts(class: InstanceClass, seed: u64) -> GenOptions {
        GenOptions {
            n: 6,
            m: 4,
            class,
            yes: true,
            seed,
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate(&opts(InstanceClass::Any, 3)).unwrap();
        assert_eq!(a, generate(&opts(InstanceClass::Any, 3)).unwrap());
        assert_ne!(a, generate(&opts(InstanceClass::Any, 4)).unwrap());
    }

    #[test]
    fn classes_hold() {
        for seed in 0..200 {
            let i = generate(&opts(InstanceClass::Interval, seed)).unwrap();
            assert_eq!(classify(&i), Classification::Interval);
            let c = generate(&opts(InstanceClass::C1p, seed)).unwrap();
            assert!(matches!(classify(&c), Classification::Interval | Classification::C1p));
            let w = generate(&opts(InstanceClass::Wc1p, seed)).unwrap();
            assert_ne!(classify(&w), Classification::NotNice);
            assert!(w.sets().iter().all(|x| x.len() >= 2));
        }
    }

    #[test]
    fn yes_instances_are_yes() {
        for seed in 0..50 {
            let i = generate(&opts(InstanceClass::Any, seed)).unwrap();
            assert!(crate::oracle::membership(&i).unwrap());
        }
    }

    #[test]
    fn rejects_impossible_sizes() {
        let mut o = opts(InstanceClass::Interval, 0);
        o.n = 1;
        assert!(matches!(generate(&o), Err(Error::Generation(_))));
        o.n = 4;
        o.m = 0;
        assert!(generate(&o).is_err());
        assert!("bogus".parse::<InstanceClass>().is_err());
        assert_eq!("wc1p".parse::<InstanceClass>().unwrap(), InstanceClass::Wc1p);
    }
}
