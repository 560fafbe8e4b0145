//! A `1 + 2k/(W - k)` approximation for packing programs whose entries are
//! small relative to their capacities.
//!
//! With every capacity scaled to 1, the width `W` is the reciprocal of the
//! largest matrix entry. The iterated rounding may overshoot a row by at
//! most `k/W`, so when `W > k` the overloaded rows can be repaired by
//! re-optimizing under slightly shrunken capacities and rounding up; each
//! repair round strictly shrinks the set of overloaded rows.

use crate::instance::{check_solution, preprocess_pack, IntSolution, Sense, SparseIP};
use crate::lp::{self, LpProblem, LpResult, LpRow, ObjSense, Relation, VarBounds};
use crate::rational::{Bound, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

use super::iterate::{self, iterated_solve};
use super::{expand_columns, PackError, PackReport};

/// Scales every row to capacity 1. Zero-capacity rows have no entries once
/// dominated columns are gone, so they stay as vacuous rows.
fn normalize_rows(inst: &SparseIP) -> SparseIP {
    let rows = inst.rows();
    let mut entries = Vec::new();
    for i in 0..inst.nrows {
        if inst.b[i].is_zero() {
            assert!(rows[i].is_empty(), "zero-capacity row kept an entry");
            continue;
        }
        for (j, a) in &rows[i] {
            entries.push((i, *j, a / &inst.b[i]));
        }
    }
    SparseIP::new(
        inst.sense,
        inst.nrows,
        inst.ncols,
        entries,
        vec![Rational::one(); inst.nrows],
        inst.c.clone(),
        inst.d.clone(),
    )
}

/// Rounds a packing program to within `1 + 2k/(W - k)` of its LP bound,
/// where `W` is the width of the normalized matrix. Fails with
/// [`PackError::WidthTooSmall`] unless `W > k`.
pub fn solve_pack_width(inst: &SparseIP) -> Result<(IntSolution, PackReport), PackError> {
    assert_eq!(inst.sense, Sense::Pack, "solve_pack_width expects a packing instance");
    iterate::check_capacities(inst)?;
    let (pinst, deleted) = preprocess_pack(inst);
    iterate::check_bounded(&pinst)?;

    if pinst.entries.is_empty() {
        // unconstrained: load every column to its multiplicity
        let x: Vec<BigInt> = pinst
            .d
            .iter()
            .map(|dj| match dj {
                Bound::Finite(v) => v.to_integer(),
                Bound::Infinite => BigInt::zero(),
            })
            .collect();
        let value = pinst.objective(&x);
        let full = expand_columns(inst.ncols, &deleted, &x);
        assert!(check_solution(inst, &full).is_empty());
        let report = PackReport {
            k: 1,
            lp_value: value.clone(),
            ratio_bound: Rational::one(),
            candidates: vec![("bounds".to_string(), value)],
            chosen: "bounds".to_string(),
            iterations: 0,
            width: None,
            fallback_used: false,
        };
        return Ok((IntSolution::new(inst, full), report));
    }

    let ninst = normalize_rows(&pinst);
    let largest = ninst
        .entries
        .iter()
        .map(|(_, _, a)| a.clone())
        .max()
        .expect("entries checked nonempty");
    let w = largest.recip();
    let k = ninst.col_sparsity().max(1);
    let kq = Rational::from_integer(BigInt::from(k as u64));
    if w <= kq {
        return Err(PackError::WidthTooSmall { width: w, k });
    }

    let out = iterated_solve(&ninst)?;
    let mut xhat = out.combined();

    // repair loop: rows above capacity get their capacity haircut by k/W,
    // everything is re-optimized below the current point, and rounding the
    // optimum up overloads strictly fewer rows than before
    let shrunk_rhs = Rational::one() - &kq / &w;
    let rows = ninst.rows();
    let mut overloaded_before: Option<BTreeSet<usize>> = None;
    let mut value_before: Option<Rational> = None;
    let mut repairs = 0usize;
    loop {
        let activity = ninst.row_activity(&xhat);
        let overloaded: BTreeSet<usize> = (0..ninst.nrows)
            .filter(|&i| activity[i] > Rational::one())
            .collect();
        if let Some(before) = &overloaded_before {
            assert!(
                overloaded.is_subset(before) && overloaded.len() < before.len(),
                "overloaded rows must shrink strictly"
            );
        }
        if overloaded.is_empty() {
            break;
        }
        repairs += 1;
        let lp_rows: Vec<LpRow> = overloaded
            .iter()
            .map(|&i| LpRow {
                coeffs: rows[i].clone(),
                rel: Relation::Le,
                rhs: shrunk_rhs.clone(),
            })
            .collect();
        let bounds: Vec<VarBounds> = xhat
            .iter()
            .map(|xj| VarBounds::range(Rational::zero(), Rational::from_integer(xj.clone())))
            .collect();
        let prob = LpProblem { sense: ObjSense::Max, c: ninst.c.clone(), rows: lp_rows, bounds };
        let LpResult::Optimal(sol) = lp::solve(&prob) else {
            return Err(PackError::Internal("repair relaxation must stay solvable"));
        };
        if let Some(before) = &value_before {
            assert!(sol.value >= *before, "repair value regressed");
        }
        value_before = Some(sol.value.clone());
        xhat = sol.x.iter().map(|v| v.ceil().to_integer()).collect();
        overloaded_before = Some(overloaded);
    }

    let value = ninst.objective(&xhat);
    assert!(
        value.clone() * (&w + &kq) >= out.lp_value.clone() * (&w - &kq),
        "certified width ratio failed"
    );
    let ratio_bound = (&w + &kq) / (&w - &kq);

    let x = expand_columns(inst.ncols, &deleted, &xhat);
    assert!(check_solution(inst, &x).is_empty(), "repaired packing infeasible");
    let report = PackReport {
        k,
        lp_value: out.lp_value.clone(),
        ratio_bound,
        candidates: vec![("reduced".to_string(), value)],
        chosen: "reduced".to_string(),
        iterations: repairs,
        width: Some(w),
        fallback_used: false,
    };
    Ok((IntSolution::new(inst, x), report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{solve_exact, OracleOutcome, DEFAULT_BUDGET};
    use crate::rational::{rat, rat_int};

    fn fin(n: i64) -> Bound {
        Bound::Finite(rat_int(n))
    }

    #[test]
    fn no_entries_returns_the_multiplicities() {
        let inst = SparseIP::new(
            Sense::Pack,
            0,
            3,
            vec![],
            vec![],
            vec![rat_int(1), rat_int(1), rat_int(0)],
            vec![fin(2), fin(3), Bound::Infinite],
        );
        let (sol, report) = solve_pack_width(&inst).unwrap();
        assert_eq!(sol.objective, rat_int(5));
        assert_eq!(report.ratio_bound, rat_int(1));
        assert!(report.width.is_none());
        let want: Vec<BigInt> = [2, 3, 0].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(sol.x, want);
    }

    #[test]
    fn quarter_entries_have_width_four() {
        // k = 1, every entry 1/4: bound 1 + 2/(4-1) = 5/3
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            2,
            vec![(0, 0, rat(1, 4)), (0, 1, rat(1, 4))],
            vec![rat_int(1)],
            vec![rat_int(2), rat_int(1)],
            vec![fin(3), fin(3)],
        );
        let (sol, report) = solve_pack_width(&inst).unwrap();
        assert_eq!(report.width, Some(rat_int(4)));
        assert_eq!(report.k, 1);
        assert_eq!(report.ratio_bound, rat(5, 3));
        assert_eq!(report.lp_value, rat_int(7));
        assert_eq!(sol.objective, rat_int(7));
        assert_eq!(report.iterations, 0);
    }

    #[test]
    fn capacities_scale_into_the_width() {
        // entries 1/3 against capacity 2 normalize to 1/6
        let inst = SparseIP::new(
            Sense::Pack,
            1,
            1,
            vec![(0, 0, rat(1, 3))],
            vec![rat_int(2)],
            vec![rat_int(1)],
            vec![fin(9)],
        );
        let (sol, report) = solve_pack_width(&inst).unwrap();
        assert_eq!(report.width, Some(rat_int(6)));
        assert_eq!(sol.objective, rat_int(6));
    }

    #[test]
    fn narrow_instances_are_rejected() {
        let inst = SparseIP::new(
            Sense::Pack,
            2,
            1,
            vec![(0, 0, rat(1, 2)), (1, 0, rat(1, 2))],
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1)],
            vec![fin(1)],
        );
        assert_eq!(
            solve_pack_width(&inst).unwrap_err(),
            PackError::WidthTooSmall { width: rat_int(2), k: 2 }
        );
    }

    #[test]
    fn sixth_entries_repair_within_factor_two() {
        // k = 2, entries at most 1/6 arranged in an odd cycle so the
        // relaxation optimum is fractional and the top-up overshoots
        let inst = SparseIP::new(
            Sense::Pack,
            3,
            3,
            vec![
                (0, 0, rat(1, 6)),
                (0, 2, rat(1, 7)),
                (1, 0, rat(1, 7)),
                (1, 1, rat(1, 6)),
                (2, 1, rat(1, 7)),
                (2, 2, rat(1, 6)),
            ],
            vec![rat_int(1), rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(1), rat_int(1)],
            vec![Bound::Infinite, Bound::Infinite, Bound::Infinite],
        );
        let (sol, report) = solve_pack_width(&inst).unwrap();
        assert_eq!(report.width, Some(rat_int(6)));
        assert_eq!(report.k, 2);
        assert_eq!(report.ratio_bound, rat_int(2));
        assert_eq!(report.lp_value, rat(126, 13));
        assert_eq!(sol.objective, rat_int(9));
        assert_eq!(report.iterations, 1);
        let OracleOutcome::Optimal(exact) = solve_exact(&inst, DEFAULT_BUDGET) else {
            panic!("oracle should finish")
        };
        assert!(sol.objective.clone() * rat_int(2) >= exact.objective);
        assert!(sol.objective <= exact.objective);
    }
}
