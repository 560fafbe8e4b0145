//! Deterministic instance generators.
//!
//! * [`random`]: seeded random sparse instances with a guaranteed row or
//!   column sparsity, for fuzzing the solvers against the oracle
//! * [`gap`]: tiny worked fixtures whose naive-relaxation integrality gap
//!   is exactly a chosen `M`
//! * [`hardness`]: the reduction from Max-3-Lin(2) to demand edge cover,
//!   together with the explicit `24m + 3t` cover certificate

pub mod gap;
pub mod hardness;
pub mod random;

pub use gap::{gen_gap_fixture, GapFixture};
pub use hardness::{
    gen_hardness, hardness_certificate, parse_formula, Certificate, Clause, GadgetInstance,
    Max3Lin2,
};
pub use random::{gen_random, DMode, RandomSpec, SparsityMode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("bad parameter: {0}")]
    Parameter(String),
}
