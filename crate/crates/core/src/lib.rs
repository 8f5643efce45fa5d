//! Exact computation engine for powers of the radial element
//! G = g_1 + .. + g_N + g_1^-1 + .. + g_N^-1 of a free group algebra.
//!
//! The crate computes three related families of values, always exactly:
//!
//! * sphere-basis expansions G^n = sum_k c_k X_k through an O(n^2)
//!   integer recurrence ([`expansion`]),
//! * scalar moments tau(G^n), the constant coefficients of those
//!   expansions ([`expansion::moment`]),
//! * operator-valued moments E(G^n), the compressions onto the subalgebra
//!   generated by the commutator g_1 .. g_N g_1^-1 .. g_N^-1, as Laurent
//!   polynomials in that commutator ([`expectation`]).
//!
//! Everything is cross-checkable: [`algebra`] implements the group algebra
//! directly (word-level convolution), and [`oracle`] counts closed walks
//! on the Cayley tree, giving two independent routes to every number the
//! recurrence produces. All values are immutable; shared references may be
//! used freely across threads, and internally parallel products are
//! bit-identical to serial ones.

pub mod algebra;
pub mod error;
pub mod expansion;
pub mod expectation;
pub mod oracle;
pub mod word;

pub use algebra::{
    generating_operator, projected_product_terms, sphere, AlgebraElement, TermLimit,
};
pub use error::{Error, Result};
pub use expansion::{
    coefficient_p, coefficient_q, expand_power, moment, moment_series, power_support_size,
    MomentTable, RadialVector,
};
pub use expectation::{
    expect, opval_moment_closed, opval_moment_series, power_of_commutator, CommutatorSpec,
    LaurentInH, OpValMomentTable,
};
pub use oracle::{
    tree_walk_distribution, tree_walk_moment, verify_all, verify_expansion, verify_opval,
    VerificationReport, VerifyRow, VerifyStatus,
};
pub use word::{count_words_of_length, GroupSpec, Letter, ReducedWord};
