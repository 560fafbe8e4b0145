//! Iterated LP rounding for packing.
//!
//! Solve the relaxation, keep the floor, then repeatedly resolve the
//! residual program over the still-fractional columns, fixing variables
//! that hit 0 or 1 and dropping any live row whose undecided support is
//! small enough. Entries of dropped rows are marked; a dropped row can be
//! overloaded by the final 0-1 top-up only through its marked entries, and
//! there are at most `threshold` of those per row.

use crate::instance::{Sense, SparseIP};
use crate::lp::{self, LpProblem, LpResult, LpRow, ObjSense, Relation, VarBounds};
use crate::rational::{Bound, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use super::PackError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationLog {
    pub lp_value: Rational,
    pub live_rows: usize,
    pub undecided: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedOutcome {
    /// Floor of the initial LP optimum.
    pub x0: Vec<BigInt>,
    /// 0-1 top-up accumulated by the residual loop.
    pub x1: Vec<BigInt>,
    /// Marked entries `(row, col)`: the undecided support of each row at
    /// the moment it was dropped from the residual program.
    pub special: BTreeSet<(usize, usize)>,
    pub trace: Vec<IterationLog>,
    /// Value of the initial relaxation; `c . (x0 + x1)` never falls below it.
    pub lp_value: Rational,
}

impl IteratedOutcome {
    pub fn combined(&self) -> Vec<BigInt> {
        self.x0.iter().zip(&self.x1).map(|(a, b)| a + b).collect()
    }
}

/// Rejects columns that admit arbitrarily large profit: positive cost, no
/// entries, no multiplicity bound.
pub(crate) fn check_bounded(inst: &SparseIP) -> Result<(), PackError> {
    let cols = inst.cols();
    for j in 0..inst.ncols {
        if cols[j].is_empty() && inst.c[j].is_positive() && inst.d[j] == Bound::Infinite {
            return Err(PackError::Unbounded(j));
        }
    }
    Ok(())
}

pub(crate) fn check_capacities(inst: &SparseIP) -> Result<(), PackError> {
    for (i, bi) in inst.b.iter().enumerate() {
        if bi.is_negative() {
            return Err(PackError::Infeasible(i));
        }
    }
    Ok(())
}

pub(crate) fn initial_extreme(
    inst: &SparseIP,
) -> Result<(Rational, Vec<BigInt>, BTreeSet<usize>), PackError> {
    let sol = match lp::solve(&inst.naive_lp()) {
        LpResult::Optimal(sol) => sol,
        LpResult::Infeasible => return Err(PackError::Internal("relaxation infeasible despite b >= 0")),
        LpResult::Unbounded => return Err(PackError::Internal("relaxation unbounded despite bound check")),
    };
    let x0: Vec<BigInt> = sol.x.iter().map(|v| v.floor().to_integer()).collect();
    let undecided: BTreeSet<usize> = lp::fractional_support(&sol);
    Ok((sol.value, x0, undecided))
}

/// The residual loop. `undecided` starts as the fractional support of the
/// initial optimum (the caller may have pruned it first).
pub(crate) fn iterate_loop(
    inst: &SparseIP,
    x0: &[BigInt],
    mut undecided: BTreeSet<usize>,
    threshold: usize,
) -> Result<(Vec<BigInt>, BTreeSet<(usize, usize)>, Vec<IterationLog>), PackError> {
    let rows = inst.rows();
    let mut live: BTreeSet<usize> = (0..inst.nrows).collect();
    let mut x1 = vec![BigInt::zero(); inst.ncols];
    let mut special: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut trace = Vec::new();

    while !undecided.is_empty() {
        let vars: Vec<usize> = undecided.iter().copied().collect();
        let col_of: std::collections::BTreeMap<usize, usize> =
            vars.iter().enumerate().map(|(idx, &j)| (j, idx)).collect();
        let mut lp_rows = Vec::new();
        for &i in &live {
            let mut resid = inst.b[i].clone();
            let mut coeffs = Vec::new();
            for (j, a) in &rows[i] {
                resid -= a * Rational::from_integer(&x0[*j] + &x1[*j]);
                if let Some(&idx) = col_of.get(j) {
                    coeffs.push((idx, a.clone()));
                }
            }
            assert!(
                !resid.is_negative(),
                "residual capacity of live row {i} went negative"
            );
            lp_rows.push(LpRow { coeffs, rel: Relation::Le, rhs: resid });
        }
        let lp = LpProblem {
            sense: ObjSense::Max,
            c: vars.iter().map(|&j| inst.c[j].clone()).collect(),
            rows: lp_rows,
            bounds: vec![VarBounds::range(Rational::zero(), Rational::one()); vars.len()],
        };
        let sol = match lp::solve(&lp) {
            LpResult::Optimal(sol) => sol,
            _ => return Err(PackError::Internal("residual relaxation not solvable")),
        };
        trace.push(IterationLog {
            lp_value: sol.value.clone(),
            live_rows: live.len(),
            undecided: vars.len(),
        });

        for (idx, &j) in vars.iter().enumerate() {
            if sol.x[idx].is_zero() {
                undecided.remove(&j);
            } else if sol.x[idx].is_one() {
                x1[j] = BigInt::one();
                undecided.remove(&j);
            }
        }
        if undecided.is_empty() {
            break;
        }

        let mut dropped = 0;
        for i in live.clone() {
            let open: Vec<usize> = rows[i]
                .iter()
                .map(|(j, _)| *j)
                .filter(|j| undecided.contains(j))
                .collect();
            if open.len() <= threshold {
                for j in open {
                    special.insert((i, j));
                }
                live.remove(&i);
                dropped += 1;
            }
        }
        if dropped == 0 {
            return Err(PackError::Internal(
                "residual loop made no progress; optimum was not basic",
            ));
        }
    }
    Ok((x1, special, trace))
}

/// Exact sanity checks on a finished outcome. `max_special` is the drop
/// threshold that produced it.
pub(crate) fn assert_outcome(inst: &SparseIP, out: &IteratedOutcome, max_special: usize) {
    assert!(out.x1.iter().all(|v| v.is_zero() || v.is_one()), "top-up must be 0-1");
    assert!(out.x0.iter().all(|v| !v.is_negative()), "floor must be nonnegative");
    for j in 0..inst.ncols {
        let total = Rational::from_integer(&out.x0[j] + &out.x1[j]);
        assert!(inst.d[j].ge(&total), "multiplicity exceeded at column {j}");
    }
    let rows = inst.rows();
    for i in 0..inst.nrows {
        let specials = rows[i].iter().filter(|(j, _)| out.special.contains(&(i, *j))).count();
        assert!(specials <= max_special, "row {i} has {specials} marked entries");
        let mut masked = Rational::zero();
        let mut full = Rational::zero();
        let mut row_max = Rational::zero();
        for (j, a) in &rows[i] {
            let x0j = Rational::from_integer(out.x0[*j].clone());
            let x1j = Rational::from_integer(out.x1[*j].clone());
            masked += a * &x0j;
            if !out.special.contains(&(i, *j)) {
                masked += a * &x1j;
            }
            full += a * (x0j + x1j);
            if *a > row_max {
                row_max = a.clone();
            }
        }
        assert!(masked <= inst.b[i], "row {i} overloaded outside its marked entries");
        assert!(
            full <= &inst.b[i] + Rational::from_integer(BigInt::from(max_special as u64)) * row_max,
            "row {i} violates the bounded-overload guarantee"
        );
    }
    let value = inst.objective(&out.combined());
    assert!(value >= out.lp_value, "combined value fell below the relaxation value");
}

/// Runs the full pipeline on a preprocessed instance (every entry at most
/// its row capacity) with the drop threshold set to the column sparsity.
pub fn iterated_solve(inst: &SparseIP) -> Result<IteratedOutcome, PackError> {
    assert_eq!(inst.sense, Sense::Pack, "iterated_solve wants a packing instance");
    check_capacities(inst)?;
    check_bounded(inst)?;
    for (i, j, a) in &inst.entries {
        assert!(
            *a <= inst.b[*i],
            "entry ({i}, {j}) exceeds its row capacity; preprocess first"
        );
    }
    let k = inst.col_sparsity().max(1);
    let (lp_value, x0, undecided) = initial_extreme(inst)?;
    let (x1, special, trace) = iterate_loop(inst, &x0, undecided, k)?;
    let out = IteratedOutcome { x0, x1, special, trace, lp_value };
    assert_outcome(inst, &out, k);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn no_rows_returns_multiplicities() {
        let inst = SparseIP::new(
            Sense::Pack,
            0,
            2,
            vec![],
            vec![],
            vec![rat_int(1), rat_int(1)],
            vec![Bound::Finite(rat_int(2)); 2],
        );
        let out = iterated_solve(&inst).unwrap();
        assert_eq!(out.x0, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(out.x1, vec![BigInt::zero(), BigInt::zero()]);
        assert!(out.special.is_empty());
        assert_eq!(out.lp_value, rat_int(4));
    }

    #[test]
    fn knapsack_marks_row_and_tops_up() {
        // max x1 + x2, (3/5)(x1 + x2) <= 1, 0-1 variables
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            2,
            vec![(0, 0, rat(3, 5)), (0, 1, rat(3, 5))],
            vec![rat_int(1)],
            vec![rat_int(1), rat_int(1)],
            vec![Bound::Finite(rat_int(1)); 2],
        );
        let out = iterated_solve(&inst).unwrap();
        assert_eq!(out.lp_value, rat(5, 3));
        let value = inst.objective(&out.combined());
        assert!(value >= out.lp_value);
        assert_eq!(value, rat_int(2));
        // the row may be overloaded, but only via its single marked entry
        assert_eq!(out.special.len(), 1);
        let activity = inst.row_activity(&out.combined());
        assert_eq!(activity[0], rat(6, 5));
        assert!(activity[0] <= rat_int(1) + rat(3, 5));
    }

    #[test]
    fn rejects_unbounded_column() {
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            2,
            vec![(0, 0, rat_int(1))],
            vec![rat_int(1)],
            vec![rat_int(1), rat_int(1)],
            vec![Bound::Finite(rat_int(1)), Bound::Infinite],
        );
        assert_eq!(iterated_solve(&inst).unwrap_err(), PackError::Unbounded(1));
    }

    #[test]
    fn rejects_negative_capacity() {
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            1,
            vec![],
            vec![rat_int(-2)],
            vec![rat_int(1)],
            vec![Bound::Finite(rat_int(1))],
        );
        assert_eq!(iterated_solve(&inst).unwrap_err(), PackError::Infeasible(0));
    }

    #[test]
    fn integral_optimum_skips_the_loop() {
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            2,
            vec![(0, 0, rat_int(1)), (0, 1, rat_int(1))],
            vec![rat_int(3)],
            vec![rat_int(2), rat_int(1)],
            vec![Bound::Finite(rat_int(2)), Bound::Finite(rat_int(2))],
        );
        let out = iterated_solve(&inst).unwrap();
        assert!(out.trace.is_empty());
        assert!(out.special.is_empty());
        assert_eq!(inst.objective(&out.combined()), out.lp_value);
    }
}
