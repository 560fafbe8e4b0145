//! Approximation algorithms for column-sparse packing programs.
//!
//! The entry points differ in what structure they exploit:
//!
//! * [`solve_pack`] works for any column sparsity `k` and guarantees a
//!   `2k^2 + 2` factor against the LP bound.
//! * [`solve_pack_2cs`] is specialized to sparsity 2 (columns are edges or
//!   loops over the row set) and achieves a factor of 4.
//! * [`solve_pack_width`] requires every entry of the normalized matrix to
//!   be small (width `W > k`) and achieves `1 + 2k/(W - k)`.
//!
//! All three share the iterated LP rounding in [`iterate`] and return a
//! [`PackReport`] describing the bound they certify.

pub mod conflict;
pub mod iterate;
pub mod two_cs;
pub mod width;

pub use conflict::{color_digraph, decompose, ConflictDigraph, Decomposition};
pub use iterate::{iterated_solve, IterationLog, IteratedOutcome};
pub use two_cs::solve_pack_2cs;
pub use width::solve_pack_width;

use crate::instance::{check_solution, preprocess_pack, IntSolution, Sense, SparseIP};
use crate::rational::{rat_int, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PackError {
    /// Column `j` has positive cost, no capacity to bind it, and d_j = inf.
    #[error("column {0} can be raised without bound")]
    Unbounded(usize),
    /// Row `i` has negative capacity, which no nonnegative point satisfies.
    #[error("row {0} has negative capacity")]
    Infeasible(usize),
    /// No node of outdegree <= d was left to peel; the caller's degree
    /// budget was wrong.
    #[error("conflict digraph has no node of outdegree <= {0}")]
    DegreeContractViolated(usize),
    /// A connected component of the fractional support carried more than
    /// one cycle, which a basic LP solution cannot produce.
    #[error("fractional support has a component with {cycles} cycles")]
    StructureViolation { cycles: usize },
    /// The 2-sparse solver was handed a denser instance.
    #[error("column sparsity {got} exceeds 2")]
    ColumnsTooDense { got: usize },
    /// The width guarantee is vacuous unless W > k.
    #[error("width {width} does not exceed column sparsity {k}")]
    WidthTooSmall { width: Rational, k: usize },
    #[error("internal invariant broken: {0}")]
    Internal(&'static str),
}

/// What a packing solver certified about its answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackReport {
    /// Column sparsity the bound is stated in terms of (at least 1).
    pub k: usize,
    /// Optimum of the linear relaxation the solver rounded (after
    /// dominated columns were dropped, and normalized where applicable).
    pub lp_value: Rational,
    /// The certified factor: `value * ratio_bound >= lp_value`.
    pub ratio_bound: Rational,
    /// Every candidate solution considered, with its objective value.
    pub candidates: Vec<(String, Rational)>,
    /// Label of the winning candidate.
    pub chosen: String,
    /// Iterations used by the underlying LP loop(s).
    pub iterations: usize,
    /// Width of the normalized matrix, for the width-based solver.
    pub width: Option<Rational>,
    /// True when the 2-sparse solver could not 2-color its conflict graph
    /// and fell back to the general decomposition (bound 11 instead of 4).
    pub fallback_used: bool,
}

/// Re-inserts zeros for columns that preprocessing deleted, restoring the
/// original index space.
pub(crate) fn expand_columns(ncols: usize, deleted: &[usize], x: &[BigInt]) -> Vec<BigInt> {
    let gone: BTreeSet<usize> = deleted.iter().copied().collect();
    let mut full = vec![BigInt::zero(); ncols];
    let mut vals = x.iter();
    for (j, slot) in full.iter_mut().enumerate() {
        if !gone.contains(&j) {
            *slot = vals.next().expect("too few kept columns").clone();
        }
    }
    assert!(vals.next().is_none(), "too many kept columns");
    full
}

pub(crate) fn pick_best(
    inst: &SparseIP,
    candidates: &[(String, Vec<BigInt>)],
) -> (usize, Vec<(String, Rational)>) {
    assert!(!candidates.is_empty());
    let values: Vec<(String, Rational)> = candidates
        .iter()
        .map(|(name, x)| (name.clone(), inst.objective(x)))
        .collect();
    let mut best = 0;
    for i in 1..values.len() {
        if values[i].1 > values[best].1 {
            best = i;
        }
    }
    (best, values)
}

/// Rounds a k-column-sparse packing program to within a factor `2k^2 + 2`
/// of its LP bound.
///
/// Dominated columns (some entry above the row's capacity) are forced to
/// zero first. The iterated rounding produces a floor `x0` plus a 0-1
/// top-up `x1`; the top-up splits into at most `2k^2 + 1` individually
/// feasible classes, and the best of the floor and the classes is at least
/// the LP value divided by `2k^2 + 2`.
pub fn solve_pack(inst: &SparseIP) -> Result<(IntSolution, PackReport), PackError> {
    assert_eq!(inst.sense, Sense::Pack, "solve_pack expects a packing instance");
    iterate::check_capacities(inst)?;
    let (pinst, deleted) = preprocess_pack(inst);
    iterate::check_bounded(&pinst)?;

    let out = iterated_solve(&pinst)?;
    let k = pinst.col_sparsity().max(1);
    let split = decompose(&pinst, &out)?;
    assert!(split.classes.len() <= 2 * k * k + 1);

    let mut candidates = vec![("floor".to_string(), out.x0.clone())];
    for (t, y) in split.classes.iter().enumerate() {
        candidates.push((format!("class-{}", t + 1), y.clone()));
    }
    let (best, values) = pick_best(&pinst, &candidates);

    let ratio_bound = rat_int((2 * k * k + 2) as i64);
    assert!(
        values[best].1.clone() * &ratio_bound >= out.lp_value,
        "certified packing ratio failed"
    );

    let x = expand_columns(inst.ncols, &deleted, &candidates[best].1);
    assert!(check_solution(inst, &x).is_empty(), "rounded packing infeasible");
    let report = PackReport {
        k,
        lp_value: out.lp_value.clone(),
        ratio_bound,
        candidates: values.clone(),
        chosen: values[best].0.clone(),
        iterations: out.trace.len(),
        width: None,
        fallback_used: false,
    };
    Ok((IntSolution::new(inst, x), report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{solve_exact, OracleOutcome, DEFAULT_BUDGET};
    use crate::rational::{rat, rat_int, Bound};
    use num_traits::One;

    fn fin(n: i64) -> Bound {
        Bound::Finite(rat_int(n))
    }

    #[test]
    fn integral_lp_optimum_is_returned_unchanged() {
        // max 2a + b, a + b <= 3, a,b <= 2: optimum (2,1) is integral
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            2,
            vec![(0, 0, rat_int(1)), (0, 1, rat_int(1))],
            vec![rat_int(3)],
            vec![rat_int(2), rat_int(1)],
            vec![fin(2), fin(2)],
        );
        let (sol, report) = solve_pack(&inst).unwrap();
        assert_eq!(sol.objective, rat_int(5));
        assert_eq!(report.lp_value, rat_int(5));
        assert_eq!(report.chosen, "floor");
        assert_eq!(report.k, 1);
        assert_eq!(report.ratio_bound, rat_int(4));
        assert!(!report.fallback_used);
        assert!(report.width.is_none());
    }

    #[test]
    fn knapsack_rounds_within_factor_four() {
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            2,
            vec![(0, 0, rat(3, 5)), (0, 1, rat(3, 5))],
            vec![rat_int(1)],
            vec![rat_int(1), rat_int(1)],
            vec![fin(1), fin(1)],
        );
        let (sol, report) = solve_pack(&inst).unwrap();
        // only one column fits, so every candidate has value <= 1,
        // and lp_value = 5/3 forces value >= (5/3)/4
        assert_eq!(sol.objective, rat_int(1));
        assert_eq!(report.lp_value, rat(5, 3));
        assert!(sol.objective.clone() * &report.ratio_bound >= report.lp_value);
    }

    #[test]
    fn dominated_columns_come_back_as_zero() {
        // column 1 alone violates row 0; it must be deleted and reported 0
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            2,
            vec![(0, 0, rat(1, 2)), (0, 1, rat_int(2))],
            vec![rat_int(1)],
            vec![rat_int(1), rat_int(10)],
            vec![fin(1), fin(1)],
        );
        let (sol, _) = solve_pack(&inst).unwrap();
        assert_eq!(sol.x.len(), 2);
        assert!(sol.x[1].is_zero());
        assert_eq!(sol.x[0], BigInt::one());
    }

    #[test]
    fn unbounded_column_is_reported() {
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            2,
            vec![(0, 0, rat_int(1))],
            vec![rat_int(1)],
            vec![rat_int(1), rat_int(1)],
            vec![fin(1), Bound::Infinite],
        );
        assert_eq!(solve_pack(&inst).unwrap_err(), PackError::Unbounded(1));
    }

    #[test]
    fn negative_capacity_is_reported() {
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            1,
            vec![(0, 0, rat_int(1))],
            vec![rat_int(-1)],
            vec![rat_int(1)],
            vec![fin(1)],
        );
        assert_eq!(solve_pack(&inst).unwrap_err(), PackError::Infeasible(0));
    }

    #[test]
    fn demand_matching_beats_oracle_over_ten() {
        // k = 2: four columns paired across four rows
        let inst = SparseIP::new(
            Sense::Pack,
            4,
            4,
            vec![
                (0, 0, rat_int(2)),
                (1, 0, rat_int(2)),
                (1, 1, rat_int(3)),
                (2, 1, rat_int(3)),
                (2, 2, rat_int(1)),
                (3, 2, rat_int(1)),
                (3, 3, rat_int(2)),
                (0, 3, rat_int(2)),
            ],
            vec![rat_int(3), rat_int(4), rat_int(3), rat_int(2)],
            vec![rat_int(5), rat_int(4), rat_int(3), rat_int(3)],
            vec![fin(2), fin(2), fin(2), fin(2)],
        );
        let (sol, report) = solve_pack(&inst).unwrap();
        assert_eq!(report.k, 2);
        assert_eq!(report.ratio_bound, rat_int(10));
        let OracleOutcome::Optimal(exact) = solve_exact(&inst, DEFAULT_BUDGET) else {
            panic!("oracle should finish")
        };
        assert!(sol.objective.clone() * rat_int(10) >= exact.objective);
        assert!(sol.objective <= exact.objective);
    }

    #[test]
    fn expand_columns_roundtrip() {
        let x = vec![BigInt::from(7), BigInt::from(9)];
        let full = expand_columns(5, &[0, 2, 4], &x);
        let want: Vec<BigInt> =
            [0, 7, 0, 9, 0].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(full, want);
    }
}
