//! Renumbering, elementary transformations and ascending chains.

use crate::error::{Error, Result};
use crate::format::perm_line;
use crate::instance::{Instance, Witness};
use crate::perm::{check_degree, Permutation};

/// `I^π = (n, m, X_1π, …, X_mπ, π⁻¹τπ)`.
pub fn renumber(instance: &Instance, pi: &Permutation) -> Result<Instance> {
    check_degree(instance.n(), pi.degree())?;
    let sets = instance.sets().iter().map(|x| x.mapped(pi)).collect();
    let tau = pi.inverse().then(instance.tau()).then(pi);
    Ok(Instance::from_parts(instance.n(), sets, tau))
}

/// The `(j, φ)`-transformation: `τ' = τφ`, sets after position `j` mapped
/// by `φ`. Index 0 is the renumbering `I^φ`; for `j ≥ 1` the validity
/// condition `φ ∈ S_{X_j}` is enforced.
pub fn elementary_transform(instance: &Instance, j: usize, phi: &Permutation) -> Result<Instance> {
    check_degree(instance.n(), phi.degree())?;
    if j == 0 {
        return renumber(instance, phi);
    }
    if j > instance.m() {
        return Err(Error::IndexOutOfRange {
            index: j,
            m: instance.m(),
        });
    }
    if !phi.in_stabilizer(instance.set(j)) {
        return Err(Error::InvalidTransformation { index: j });
    }
    let sets = instance
        .sets()
        .iter()
        .enumerate()
        .map(|(i, x)| if i + 1 > j { x.mapped(phi) } else { x.clone() })
        .collect();
    Ok(Instance::from_parts(instance.n(), sets, instance.tau().then(phi)))
}

/// The description `(π_1, σ_1, …, σ_{m−1})` of the ascending chain
/// `I → I^{π_1} → I_1[1, σ_1] → … → I_{m−1}[m−1, σ_{m−1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDescription {
    pub pi1: Permutation,
    pub sigmas: Vec<Permutation>,
}

impl ChainDescription {
    /// The trivial chain for an instance with `m` sets.
    pub fn identity(n: usize, m: usize) -> Self {
        Self {
            pi1: Permutation::identity(n),
            sigmas: vec![Permutation::identity(n); m.saturating_sub(1)],
        }
    }

    /// `π_j = π_1 σ_1 ⋯ σ_{j−1}` for `j = 1, …, m`.
    pub fn prefix_products(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.sigmas.len() + 1);
        out.push(self.pi1.clone());
        for s in &self.sigmas {
            let next = out.last().expect("non-empty").then(s);
            out.push(next);
        }
        out
    }

    /// Checks the shape and the validity conditions `σ_j ∈ S_{X_jπ_j}`.
    pub fn check(&self, instance: &Instance) -> Result<()> {
        let n = instance.n();
        let m = instance.m();
        if self.sigmas.len() != m.saturating_sub(1) {
            return Err(Error::InvalidChain(format!(
                "{} sigmas for {m} sets, expected {}",
                self.sigmas.len(),
                m.saturating_sub(1)
            )));
        }
        check_degree(n, self.pi1.degree())?;
        let mut pi = self.pi1.clone();
        for (j, s) in self.sigmas.iter().enumerate() {
            check_degree(n, s.degree())?;
            if !s.in_stabilizer(&instance.sets()[j].mapped(&pi)) {
                return Err(Error::InvalidTransformation { index: j + 1 });
            }
            pi = pi.then(s);
        }
        Ok(())
    }

    /// `pi1 <images>` followed by one `sigma_j <images>` line per step.
    pub fn to_text(&self) -> String {
        let mut out = perm_line("pi1", &self.pi1);
        for (j, s) in self.sigmas.iter().enumerate() {
            out.push_str(&perm_line(&format!("sigma_{}", j + 1), s));
        }
        out
    }
}

/// `I_m = (n, m, X_1π_1, …, X_mπ_m, π_1⁻¹τπ_m)`.
pub fn apply_chain(instance: &Instance, chain: &ChainDescription) -> Result<Instance> {
    chain.check(instance)?;
    if instance.m() == 0 {
        return renumber(instance, &chain.pi1);
    }
    let prefix = chain.prefix_products();
    let sets = instance.sets().iter().zip(&prefix).map(|(x, p)| x.mapped(p)).collect();
    let last = prefix.last().expect("m ≥ 1");
    let tau = chain.pi1.inverse().then(instance.tau()).then(last);
    Ok(Instance::from_parts(instance.n(), sets, tau))
}

/// Folds the chain as individual elementary transformations.
pub fn apply_chain_stepwise(instance: &Instance, chain: &ChainDescription) -> Result<Instance> {
    let mut current = elementary_transform(instance, 0, &chain.pi1)?;
    for (j, s) in chain.sigmas.iter().enumerate() {
        current = elementary_transform(&current, j + 1, s)?;
    }
    Ok(current)
}

/// Turns a witness for `apply_chain(instance, chain)` into one for
/// `instance`.
///
/// Undoing the steps from `I_{m−1}[m−1, σ_{m−1}]` down to the renumbering
/// telescopes to `π_j σ'_j π_{j+1}⁻¹` for `j < m` and `π_m σ'_m π_m⁻¹`,
/// which costs `O(mn)` instead of re-conjugating every later factor.
pub fn pull_back_witness(end_witness: &Witness, chain: &ChainDescription, instance: &Instance) -> Result<Witness> {
    chain.check(instance)?;
    let m = instance.m();
    if end_witness.factors.len() != m {
        return Err(Error::InvalidWitness(format!(
            "{} factors for {m} sets",
            end_witness.factors.len()
        )));
    }
    for f in &end_witness.factors {
        check_degree(instance.n(), f.degree())?;
    }
    let prefix = chain.prefix_products();
    let factors = end_witness
        .factors
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let right = prefix.get(j + 1).unwrap_or(&prefix[j]);
            prefix[j].then(s).then(&right.inverse())
        })
        .collect();
    Ok(Witness { factors })
}
