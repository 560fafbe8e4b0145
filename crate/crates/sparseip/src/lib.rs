//! Approximation algorithms for row-sparse covering and column-sparse
//! packing integer programs, with exact rational arithmetic throughout.
//!
//! The crate is organized around a shared instance model:
//!
//! * [`instance`]: covering/packing instances, validation, normalization,
//!   and a plain-text interchange format
//! * [`lp`]: an exact bounded-variable simplex used as the relaxation engine
//! * [`cover`]: row replacement, knapsack-style strengthening cuts, and the
//!   rounding solver for covering instances (ratio bound `k`)
//! * [`pack`]: the iterated rounding pipeline for column-sparse packing,
//!   plus special-purpose solvers for two-row-support instances and for
//!   instances with large row slack
//! * [`oracle`]: a small exact branch-and-bound reference solver
//! * [`gen`]: deterministic instance generators, worked gap fixtures, and a
//!   reduction producing hard two-column covering families
//!
//! All algorithms are deterministic: identical inputs yield identical
//! outputs, byte for byte.

pub mod cover;
pub mod gen;
pub mod instance;
pub mod lp;
pub mod oracle;
pub mod pack;
pub mod rational;

pub use instance::{IntSolution, Sense, SparseIP};
pub use rational::{Bound, Rational};
