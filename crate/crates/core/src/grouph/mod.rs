//! The group `H = <x, t | x t^n x t^-n = t^n x t^-n x>` and its integral group
//! ring, presented as skew Laurent polynomials in `t` over
//! `A = Z[x_i^{+-1} : i in Z]` with `x_i = t^i x t^-i`.

pub mod hgroup;
pub mod kernel;
pub mod laurent;
pub mod skew;
pub mod syzygy;
pub mod text;

use thiserror::Error;

pub use hgroup::HElement;
pub use kernel::{f_map, f_map_literal, kn_check, w_pair, PairElement};
pub use laurent::{LaurentPoly, Monomial};
pub use skew::{Extended, Laurent2, ZHElement};
pub use syzygy::{
    complexity, ideal_decompose, reduce_fully, reduce_step, x_relation, Complexity, ReduceStep,
    RelationVector, RightIdealJn,
};
pub use text::{parse_zh, ParseZHError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupHError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vector is not in the kernel of F_n")]
    NotARelation,
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}
