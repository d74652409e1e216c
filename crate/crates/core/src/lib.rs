//! Decision procedures for the word problem for products of symmetric
//! groups: given specification sets `X_1, …, X_m ⊆ [n]` and a permutation
//! `τ_0`, is `τ_0 = σ_1 ⋯ σ_m` with each `σ_j` fixing every point outside
//! `X_j`?
//!
//! Permutations compose left to right and act on the right, so
//! `σ.compose(&τ)` maps `i` to `(iσ)τ`. All public values are 1-based.
//!
//! The crate decides three subclasses and produces checkable witnesses:
//!
//! * interval sets, by the sorting strategy ([`interval`]);
//! * sets with the consecutive-ones property, by renumbering first;
//! * nice instances (weak consecutive ones), by transforming them along an
//!   ascending chain recovered from PQ-trees ([`wc1p`], [`pqtree`]).
//!
//! [`oracle`] holds brute-force references for small `n`, and [`solve`]
//! ties everything together.
//!
//! ```
//! use wppsg::{format::parse_instance, solve::{solve, SolveOptions, Verdict}, verify_witness};
//!
//! let instance = parse_instance("n=5 m=4\nX 1 4\nX 2 4\nX 2 3 5\nX 1 2 4 5\ntau 1 3 4 2 5\n")?;
//! let report = solve(&instance, &SolveOptions::default())?;
//! assert_eq!(report.verdict, Verdict::Yes);
//! assert!(verify_witness(&instance, report.witness.as_ref().unwrap()));
//! # Ok::<(), wppsg::Error>(())
//! ```

pub mod error;
pub mod format;
pub mod generate;
pub mod instance;
pub mod interval;
pub mod oracle;
pub mod perm;
pub mod pqtree;
pub mod scaling;
pub mod solve;
pub mod wc1p;

pub use error::{Error, Result};
pub use instance::{check_witness, verify_witness, Instance, NormalizationLog, Witness, WitnessViolation};
pub use interval::{Decision, SortingTrace};
pub use perm::{Permutation, SpecSet, TranspositionSeq};
pub use pqtree::{NodeId, NodeKind, PqTree, Shape, XStructure};
pub use solve::{classify, Classification, Method, SolveOptions, SolveReport, Verdict};
pub use wc1p::{ChainDescription, ReduceExpandTrace};
