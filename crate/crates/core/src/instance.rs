//! WPPSG instances and factorization witnesses.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{check_degree, Permutation, SpecSet};

/// An instance `(n, m, X_1, …, X_m, τ_0)`: is `τ_0` a product
/// `σ_1 ⋯ σ_m` with `σ_j ∈ S_{X_j}`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    sets: Vec<SpecSet>,
    tau: Permutation,
}

impl Instance {
    pub fn new(n: usize, sets: Vec<SpecSet>, tau: Permutation) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegreeTooSmall { n, min: 1 });
        }
        check_degree(n, tau.degree())?;
        for x in &sets {
            check_degree(n, x.universe())?;
        }
        Ok(Self { n, sets, tau })
    }

    pub(crate) fn from_parts(n: usize, sets: Vec<SpecSet>, tau: Permutation) -> Self {
        debug_assert!(tau.degree() == n && sets.iter().all(|x| x.universe() == n));
        Self { n, sets, tau }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[SpecSet] {
        &self.sets
    }

    /// The 1-based `j`-th specification set.
    pub fn set(&self, j: usize) -> &SpecSet {
        &self.sets[j - 1]
    }

    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    pub fn with_tau(&self, tau: Permutation) -> Result<Self> {
        Self::new(self.n, self.sets.clone(), tau)
    }

    pub fn is_interval_instance(&self) -> bool {
        self.sets.iter().all(SpecSet::is_interval)
    }

    /// Drops every set with `|X| ≤ 1`; `S_X = {id}` for those.
    pub fn normalize(&self) -> (Instance, NormalizationLog) {
        let mut kept = Vec::with_capacity(self.sets.len());
        let mut log = NormalizationLog {
            original_m: self.m(),
            kept: Vec::with_capacity(self.sets.len()),
        };
        for (j, x) in self.sets.iter().enumerate() {
            if x.len() >= 2 {
                kept.push(x.clone());
                log.kept.push(j);
            }
        }
        (Self::from_parts(self.n, kept, self.tau.clone()), log)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_instance(self))
    }
}

/// Which sets survived [`Instance::normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationLog {
    original_m: usize,
    kept: Vec<usize>,
}

impl NormalizationLog {
    /// 1-based indices of the dropped sets.
    pub fn dropped(&self) -> Vec<usize> {
        let mut kept = self.kept.iter().peekable();
        (0..self.original_m)
            .filter(|j| {
                if kept.peek() == Some(&j) {
                    kept.next();
                    false
                } else {
                    true
                }
            })
            .map(|j| j + 1)
            .collect()
    }

    /// Re-inserts identity factors of degree `n` for the dropped sets.
    pub fn restore(&self, normalized: Witness, n: usize) -> Witness {
        debug_assert_eq!(normalized.factors.len(), self.kept.len());
        let mut factors = vec![Permutation::identity(n); self.original_m];
        for (&slot, f) in self.kept.iter().zip(normalized.factors) {
            factors[slot] = f;
        }
        Witness { factors }
    }
}

/// A YES-certificate `(σ_1, …, σ_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub factors: Vec<Permutation>,
}

impl Witness {
    /// The permutations `τ_0, …, τ_m` with `τ_j = σ_j⁻¹ τ_{j-1}`; for a
    /// valid witness `τ_j` agrees with `τ_{j-1}` outside `X_j` and
    /// `τ_m` is the identity.
    pub fn transitions(&self, tau: &Permutation) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.factors.len() + 1);
        out.push(tau.clone());
        for sigma in &self.factors {
            let next = sigma.inverse().then(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    }
}

/// The first condition a rejected witness violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessViolation {
    WrongLength {
        expected: usize,
        found: usize,
    },
    WrongDegree {
        index: usize,
        degree: usize,
    },
    /// `σ_index ∉ S_{X_index}` (1-based).
    OutsideStabilizer {
        index: usize,
    },
    WrongProduct {
        product: Permutation,
    },
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongLength { expected, found } => {
                write!(f, "expected {expected} factors, found {found}")
            }
            Self::WrongDegree { index, degree } => {
                write!(f, "factor {index} has degree {degree}")
            }
            Self::OutsideStabilizer { index } => {
                write!(f, "factor {index} moves a point outside X_{index}")
            }
            Self::WrongProduct { product } => {
                write!(f, "product of the factors is {product}, not tau")
            }
        }
    }
}

/// Checks `σ_j ∈ S_{X_j}` for every `j` and `σ_1 ⋯ σ_m = τ_0`.
pub fn check_witness(instance: &Instance, witness: &Witness) -> Result<(), WitnessViolation> {
    if witness.factors.len() != instance.m() {
        return Err(WitnessViolation::WrongLength {
            expected: instance.m(),
            found: witness.factors.len(),
        });
    }
    let mut product = Permutation::identity(instance.n());
    for (j, (sigma, x)) in witness.factors.iter().zip(instance.sets()).enumerate() {
        if sigma.degree() != instance.n() {
            return Err(WitnessViolation::WrongDegree {
                index: j + 1,
                degree: sigma.degree(),
            });
        }
        if !sigma.in_stabilizer(x) {
            return Err(WitnessViolation::OutsideStabilizer { index: j + 1 });
        }
        product = product.then(sigma);
    }
    if &product != instance.tau() {
        return Err(WitnessViolation::WrongProduct { product });
    }
    Ok(())
}

pub fn verify_witness(instance: &Instance, witness: &Witness) -> bool {
    check_witness(instance, witness).is_ok()
}
