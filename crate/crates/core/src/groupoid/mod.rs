//! The path groupoid of a k-graph without sources, restricted to infinite paths that end in a
//! fixed block at every vertex, together with partitions of it into basic sets `Z(μ, ν)` and
//! the continuous 2-cocycle `σ_c` they induce from a categorical 2-cocycle `c`.
//!
//! Composable tuples are presented over one shared tail `z`, so `(p_0 z, p_1 z, …)` names the
//! arrows `(p_{i−1} z, d(p_{i−1}) − d(p_i), p_i z)`.

mod partition;
mod paths;
mod sigma;

pub use partition::{contains, is_suffix, wedge, CanonicalPartition, Partition, RefinedPartition};
pub use paths::{ComposableTuple, Cylinder, EventualPath, GroupoidElem, PathSpace};
pub use sigma::{
    choose_abc, choose_abc_with, functor_1cocycle, refine_compare, sample_tuples, sigma_eval, sigma_eval_with,
    sigma_identity_suite, verify_choice, Choice, TupleSpec,
};
