//! Weak consecutive-ones instances: transformations, ascending chains and
//! the REDUCE-EXPAND niceness test.

mod pipeline;
mod transform;

pub use pipeline::{
    c1p_renumbering, is_nice, matrix_wc1p, recover_chain, reduce_expand, solve_wppsg1, solve_wppsg2, ChainSolution,
    ReduceExpandTrace,
};
pub use transform::{
    apply_chain, apply_chain_stepwise, elementary_transform, pull_back_witness, renumber, ChainDescription,
};
