//! Exact counting, construction and verification of universal cycles for
//! k-permutations of `{1, ..., n}`.
//!
//! A universal cycle for `P(n,k)` is a cyclic sequence of length
//! `n!/(n-k)!` in which every k-permutation appears exactly once as `k`
//! consecutive symbols. They correspond one-to-one with Eulerian tours of the
//! transition digraph ([`digraph`]), which [`counting`] counts three
//! independent ways and [`spectral`] uses to check the k = 2 and k = 3
//! spectra exactly.

pub mod counting;
pub mod digraph;
pub mod error;
pub mod exactmat;
pub mod perm;
pub mod spectral;

pub use counting::{
    count_bruteforce, count_closed_form, count_matrix_tree, enumerate_all, generate_cycle,
    CountReport, Method, TourBudget,
};
pub use digraph::TransitionDigraph;
pub use error::{Error, Result};
pub use exactmat::{BigCount, ExactMatrix};
pub use perm::{
    canonical_rotation, is_universal_cycle, rank, unrank, CyclicSequence, KPermutation, Verdict,
    Violation,
};
pub use spectral::{CheckKind, CheckReport};
