//! Covering solver with ratio bound equal to the row sparsity.
//!
//! Pipeline: normalize demands to 1 and clip coefficients, replace each row
//! by an equivalent row that rounds well (same nonnegative-integer solution
//! set, but scaling an LP optimum by the sparsity and flooring stays
//! feasible), strengthen the relaxation with knapsack-style cuts for the
//! variables pinned at their multiplicity, then round.

use crate::instance::{check_solution, normalize_cover, IntSolution, NormalizeError, Sense, SparseIP};
use crate::lp::{self, fractional_support, LpResult, LpRow, Relation};
use crate::rational::{Bound, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("relaxation is infeasible, so the instance is too")]
    Infeasible,
    #[error("row {0} has nonpositive demand")]
    ZeroDemandRow(usize),
    #[error("malformed row: {0}")]
    MalformedRow(String),
    #[error("index {index} out of range ({len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// How a row left [`make_roundable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowProvenance {
    Unchanged,
    /// `t` unit coefficients kept, the rest rebuilt from `v`.
    Replaced { t: usize, v: BigInt },
}

/// A row with coefficients in (0, 1] whose LP optima survive scale-by-k
/// flooring. Produced by [`make_roundable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundableRow {
    pub coeffs: Vec<(usize, Rational)>,
    pub provenance: RowProvenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Roundability {
    Roundable,
    Counterexample(Vec<Rational>),
}

/// True when `x` witnesses that scaling by `rho` and flooring breaks the
/// row: `alpha . x >= 1` but `alpha . floor(rho x) < 1`.
pub fn roundability_violated_at(alpha: &[Rational], rho: &Rational, x: &[Rational]) -> bool {
    let dot: Rational = alpha.iter().zip(x).map(|(a, v)| a * v).sum();
    if dot < Rational::one() {
        return false;
    }
    let rounded: Rational = alpha
        .iter()
        .zip(x)
        .map(|(a, v)| a * Rational::from_integer((rho * v).floor().to_integer()))
        .sum();
    rounded < Rational::one()
}

/// Tests roundability of `alpha` under scale `rho` on a finite grid.
///
/// The grid uses denominators dividing the lcm of rho's denominator and the
/// numerators and denominators of the row (so exactly-tight points such as
/// a lone `x_j = 1/alpha_j` are on it), with coordinates up to
/// `search_bound`. Only near-tight points (`alpha . x` within `max alpha` of
/// 1) are tested; a violation anywhere can be shifted to one there by
/// lowering coordinates. This is a testing utility, not a proof: it cannot
/// certify roundability over all reals, but any counterexample it returns
/// is genuine. The search order is fixed (lexicographic), so the witness is
/// deterministic but otherwise arbitrary among all violations on the grid.
pub fn is_roundable(alpha: &[Rational], rho: &Rational, search_bound: u32) -> Roundability {
    assert!(alpha.iter().all(|a| !a.is_negative()), "coefficients must be nonnegative");
    assert!(*rho > Rational::one(), "scale must exceed 1");
    let support: Vec<usize> = (0..alpha.len()).filter(|&j| alpha[j].is_positive()).collect();
    if support.is_empty() {
        return Roundability::Roundable;
    }
    let mut l = rho.denom().clone();
    for &j in &support {
        l = l.lcm(alpha[j].denom());
        l = l.lcm(alpha[j].numer());
    }
    let max_alpha = support.iter().map(|&j| alpha[j].clone()).max().unwrap();
    let upper = Rational::one() + max_alpha;
    let steps = BigInt::from(search_bound) * &l;

    fn walk(
        alpha: &[Rational],
        rho: &Rational,
        support: &[usize],
        l: &BigInt,
        steps: &BigInt,
        upper: &Rational,
        x: &mut Vec<Rational>,
        depth: usize,
        partial: &Rational,
    ) -> Option<Vec<Rational>> {
        if depth == support.len() {
            if *partial >= Rational::one() && roundability_violated_at(alpha, rho, x) {
                return Some(x.clone());
            }
            return None;
        }
        let j = support[depth];
        let mut c = BigInt::zero();
        while c <= *steps {
            let xj = Rational::new(c.clone(), l.clone());
            let next = partial + &alpha[j] * &xj;
            if next >= *upper {
                break;
            }
            x[j] = xj;
            if let Some(w) = walk(alpha, rho, support, l, steps, upper, x, depth + 1, &next) {
                return Some(w);
            }
            x[j] = Rational::zero();
            c += BigInt::one();
        }
        None
    }

    let mut x = vec![Rational::zero(); alpha.len()];
    match walk(alpha, rho, &support, &l, &steps, &upper, &mut x, 0, &Rational::zero()) {
        Some(w) => Roundability::Counterexample(w),
        None => Roundability::Roundable,
    }
}

/// Replaces `row >= 1` by a row with the same nonnegative-integer solutions
/// that tolerates scale-by-k flooring.
///
/// Rows whose coefficients sum to at most k-1, and all-unit rows, already
/// do. Otherwise sort the coefficients nonincreasing (ties by column index,
/// so the output is deterministic), keep the `t` leading units, set
/// `v = ceil(1/alpha_min)`, and emit units, then `(v-1)/v`, then a final
/// `1/v`. A single-coefficient row degenerates to `x/v >= 1`, i.e. `x >= v`.
pub fn make_roundable(row: &[(usize, Rational)], k: usize) -> Result<RoundableRow, CoverError> {
    for (j, a) in row {
        if !a.is_positive() || *a > Rational::one() {
            return Err(CoverError::MalformedRow(format!(
                "coefficient {a} at column {j} outside (0, 1]"
            )));
        }
    }
    if row.len() > k {
        return Err(CoverError::MalformedRow(format!(
            "{} nonzeros exceed declared sparsity {k}",
            row.len()
        )));
    }
    let sum: Rational = row.iter().map(|(_, a)| a.clone()).sum();
    let coeffs: Vec<(usize, Rational)> = row.to_vec();
    if row.is_empty() || sum <= Rational::from_integer(BigInt::from(k as i64 - 1)) {
        return Ok(RoundableRow { coeffs, provenance: RowProvenance::Unchanged });
    }
    let mut sorted = coeffs;
    sorted.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let t = sorted.iter().take_while(|(_, a)| a.is_one()).count();
    if t == sorted.len() {
        return Ok(RoundableRow {
            coeffs: row.to_vec(),
            provenance: RowProvenance::Unchanged,
        });
    }
    let smallest = &sorted.last().unwrap().1;
    let v = smallest.recip().ceil().to_integer();
    let vr = Rational::from_integer(v.clone());
    let middle = (&vr - Rational::one()) / &vr;
    let last = vr.recip();
    let n = sorted.len();
    let mut out: Vec<(usize, Rational)> = sorted
        .iter()
        .enumerate()
        .map(|(pos, (j, _))| {
            let a = if pos < t {
                Rational::one()
            } else if pos + 1 < n {
                middle.clone()
            } else {
                last.clone()
            };
            (*j, a)
        })
        .collect();
    out.sort_by_key(|(j, _)| *j);
    Ok(RoundableRow { coeffs: out, provenance: RowProvenance::Replaced { t, v } })
}

/// A strengthening cut for row `i` of a normalized instance: assuming the
/// variables in `f` are saturated at their multiplicities, the rest must
/// still cover the remainder, with coefficients clipped at that remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KcCut {
    pub row: usize,
    pub f: BTreeSet<usize>,
    /// Clipped coefficients for the columns outside `f`, in column order.
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

/// Builds the cut for `(i, f)`, or `None` when `f` alone already covers the
/// demand (remainder <= 0, including the infinite-multiplicity case).
pub fn kc_cut(
    inst: &SparseIP,
    i: usize,
    f: &BTreeSet<usize>,
) -> Result<Option<KcCut>, CoverError> {
    if i >= inst.nrows {
        return Err(CoverError::IndexOutOfRange { index: i, len: inst.nrows });
    }
    debug_assert!(inst.b[i].is_one(), "kc_cut expects a normalized instance");
    let row = &inst.rows()[i];
    let support: BTreeSet<usize> = row.iter().map(|(j, _)| *j).collect();
    for &j in f {
        if !support.contains(&j) {
            return Err(CoverError::IndexOutOfRange { index: j, len: inst.ncols });
        }
    }
    let mut saturated = Rational::zero();
    for (j, a) in row {
        if f.contains(j) {
            match &inst.d[*j] {
                Bound::Finite(dj) => saturated += a * dj,
                Bound::Infinite => return Ok(None),
            }
        }
    }
    let rhs = Rational::one() - saturated;
    if !rhs.is_positive() {
        return Ok(None);
    }
    let coeffs = row
        .iter()
        .filter(|(j, _)| !f.contains(j))
        .map(|(j, a)| (*j, if *a < rhs { a.clone() } else { rhs.clone() }))
        .collect();
    Ok(Some(KcCut { row: i, f: f.clone(), coeffs, rhs }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    /// Row sparsity of the normalized instance; also the ratio bound.
    pub k: usize,
    /// Value of the final (cut-strengthened) relaxation.
    pub lp_value: Rational,
    pub cuts_added: usize,
    pub rows_replaced: usize,
    pub ratio_bound: usize,
}

/// Solves a covering instance within a factor of its row sparsity `k`.
///
/// The returned solution is integral, feasible for the original instance,
/// and costs at most `k * lp_value <= k * OPT` (asserted exactly). Costs
/// must be nonnegative.
pub fn solve_cover(inst: &SparseIP) -> Result<(IntSolution, CoverReport), CoverError> {
    assert_eq!(inst.sense, Sense::Cover, "solve_cover wants a covering instance");
    let normalized = normalize_cover(inst)
        .map_err(|NormalizeError::ZeroDemandRow(i)| CoverError::ZeroDemandRow(i))?;
    let k = normalized.row_sparsity();

    let mut rows_replaced = 0;
    let mut entries = Vec::new();
    for (i, row) in normalized.rows().iter().enumerate() {
        let rr = make_roundable(row, k.max(1))?;
        if matches!(rr.provenance, RowProvenance::Replaced { .. }) {
            rows_replaced += 1;
        }
        for (j, a) in rr.coeffs {
            entries.push((i, j, a));
        }
    }
    let work = SparseIP::new(
        Sense::Cover,
        normalized.nrows,
        normalized.ncols,
        entries,
        vec![Rational::one(); normalized.nrows],
        normalized.c.clone(),
        normalized.d.clone(),
    );

    let kr = Rational::from_integer(BigInt::from(k.max(1)));
    let mut lp = work.naive_lp();
    let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let mut cuts_added = 0;
    let optimum = loop {
        let sol = match lp::solve(&lp) {
            LpResult::Optimal(sol) => sol,
            LpResult::Infeasible => return Err(CoverError::Infeasible),
            LpResult::Unbounded => {
                return Err(CoverError::Internal("covering relaxation reported unbounded"))
            }
        };
        let mut fresh = 0;
        for i in 0..work.nrows {
            let f: BTreeSet<usize> = work.rows()[i]
                .iter()
                .filter(|(j, _)| match &work.d[*j] {
                    Bound::Finite(dj) => sol.x[*j] >= dj / &kr,
                    Bound::Infinite => false,
                })
                .map(|(j, _)| *j)
                .collect();
            let key = (i, f.iter().copied().collect::<Vec<_>>());
            if seen.contains(&key) {
                continue;
            }
            let Some(cut) = kc_cut(&work, i, &f)? else { continue };
            let activity: Rational = cut.coeffs.iter().map(|(j, a)| a * &sol.x[*j]).sum();
            if activity < cut.rhs {
                lp.rows.push(LpRow { coeffs: cut.coeffs.clone(), rel: Relation::Ge, rhs: cut.rhs.clone() });
                seen.insert(key);
                fresh += 1;
            }
        }
        if fresh == 0 {
            break sol;
        }
        cuts_added += fresh;
    };

    // an integral optimum of the relaxation is already optimal, so skip the
    // scale-and-floor step (which could only cost more)
    let xhat: Vec<BigInt> = if fractional_support(&optimum).is_empty() {
        optimum.x.iter().map(|v| v.to_integer()).collect()
    } else {
        optimum
            .x
            .iter()
            .zip(&work.d)
            .map(|(xj, dj)| {
                let scaled = (&kr * xj).floor().to_integer();
                match dj {
                    Bound::Finite(d) => scaled.min(d.to_integer()),
                    Bound::Infinite => scaled,
                }
            })
            .collect()
    };

    let solution = IntSolution::new(inst, xhat);
    assert!(
        check_solution(inst, &solution.x).is_empty(),
        "rounded cover must satisfy the original instance"
    );
    assert!(
        solution.objective <= &kr * &optimum.value,
        "cost must stay within k times the relaxation value"
    );
    let report = CoverReport {
        k,
        lp_value: optimum.value,
        cuts_added,
        rows_replaced,
        ratio_bound: k.max(1),
    };
    Ok((solution, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn units(v: i64) -> Rational {
        rat_int(v)
    }

    #[test]
    fn half_half_is_two_roundable() {
        let alpha = [rat(1, 2), rat(1, 2)];
        assert_eq!(is_roundable(&alpha, &rat_int(2), 2), Roundability::Roundable);
    }

    #[test]
    fn unit_unit_third_is_three_roundable() {
        let alpha = [rat_int(1), rat_int(1), rat(1, 3)];
        assert_eq!(is_roundable(&alpha, &rat_int(3), 2), Roundability::Roundable);
    }

    #[test]
    fn nine_tenths_pair_fails_three_halves() {
        let alpha = [rat(9, 10), rat(9, 10)];
        match is_roundable(&alpha, &rat(3, 2), 2) {
            Roundability::Counterexample(x) => {
                assert!(roundability_violated_at(&alpha, &rat(3, 2), &x));
            }
            Roundability::Roundable => panic!("expected a counterexample"),
        }
        // the equal-coordinates witness: alpha.x = 1 but floor(3x/2) = 0
        let witness = [rat(5, 9), rat(5, 9)];
        assert!(roundability_violated_at(&alpha, &rat(3, 2), &witness));
    }

    #[test]
    fn replacement_keeps_leading_unit() {
        let row = vec![(0, rat_int(1)), (1, rat(3, 5))];
        let rr = make_roundable(&row, 2).unwrap();
        assert_eq!(rr.provenance, RowProvenance::Replaced { t: 1, v: 2.into() });
        assert_eq!(rr.coeffs, vec![(0, rat_int(1)), (1, rat(1, 2))]);
    }

    #[test]
    fn replacement_without_units() {
        let row = vec![(0, rat(9, 10)), (1, rat(9, 10))];
        let rr = make_roundable(&row, 2).unwrap();
        assert_eq!(rr.provenance, RowProvenance::Replaced { t: 0, v: 2.into() });
        assert_eq!(rr.coeffs, vec![(0, rat(1, 2)), (1, rat(1, 2))]);
    }

    #[test]
    fn small_sum_rows_pass_through() {
        let row = vec![(0, rat(2, 5)), (1, rat(2, 5))];
        let rr = make_roundable(&row, 2).unwrap();
        assert_eq!(rr.provenance, RowProvenance::Unchanged);
        assert_eq!(rr.coeffs, row);
    }

    #[test]
    fn all_unit_rows_pass_through() {
        let row = vec![(0, rat_int(1)), (1, rat_int(1)), (2, rat_int(1))];
        let rr = make_roundable(&row, 3).unwrap();
        assert_eq!(rr.provenance, RowProvenance::Unchanged);
    }

    #[test]
    fn single_column_row_becomes_multiplicity_bound() {
        // 2/5 x >= 1 has the integer solutions x >= 3, as does x/3 >= 1
        let row = vec![(0, rat(2, 5))];
        let rr = make_roundable(&row, 1).unwrap();
        assert_eq!(rr.provenance, RowProvenance::Replaced { t: 0, v: 3.into() });
        assert_eq!(rr.coeffs, vec![(0, rat(1, 3))]);
    }

    #[test]
    fn make_roundable_rejects_bad_rows() {
        assert!(matches!(
            make_roundable(&[(0, rat(3, 2))], 2),
            Err(CoverError::MalformedRow(_))
        ));
        assert!(matches!(
            make_roundable(&[(0, rat(1, 2)), (1, rat(1, 2)), (2, rat(1, 2))], 2),
            Err(CoverError::MalformedRow(_))
        ));
    }

    #[test]
    fn replaced_rows_agree_with_originals_on_integers() {
        // brute agreement on a box, plus monotonicity, pins equivalence
        let cases = vec![
            vec![(0, rat_int(1)), (1, rat(3, 5))],
            vec![(0, rat(9, 10)), (1, rat(9, 10))],
            vec![(0, rat(5, 6)), (1, rat(2, 3)), (2, rat(3, 5))],
        ];
        for row in cases {
            let k = row.len();
            let rr = make_roundable(&row, k).unwrap();
            let b = 5i64;
            let mut stack = vec![vec![]];
            while let Some(p) = stack.pop() {
                if p.len() == k {
                    let old: Rational =
                        row.iter().zip(&p).map(|((_, a), v): (_, &i64)| a * rat_int(*v)).sum();
                    let new: Rational =
                        rr.coeffs.iter().zip(&p).map(|((_, a), v): (_, &i64)| a * rat_int(*v)).sum();
                    assert_eq!(
                        old >= rat_int(1),
                        new >= rat_int(1),
                        "disagree at {p:?} for row {row:?}"
                    );
                    continue;
                }
                for v in 0..=b {
                    let mut q = p.clone();
                    q.push(v);
                    stack.push(q);
                }
            }
        }
    }

    #[test]
    fn replaced_rows_are_roundable() {
        let rows = vec![
            vec![(0, rat_int(1)), (1, rat(3, 5))],
            vec![(0, rat(9, 10)), (1, rat(9, 10))],
            vec![(0, rat(5, 6)), (1, rat(2, 3)), (2, rat(3, 5))],
        ];
        for row in rows {
            let k = row.len();
            let rr = make_roundable(&row, k).unwrap();
            let dense_len = row.iter().map(|(j, _)| j + 1).max().unwrap();
            let mut alpha = vec![rat_int(0); dense_len];
            for (j, a) in &rr.coeffs {
                alpha[*j] = a.clone();
            }
            let rho = rat_int(k as i64);
            assert_eq!(is_roundable(&alpha, &rho, 2), Roundability::Roundable);
        }
    }

    fn normalized(entries: Vec<(usize, usize, Rational)>, m: usize, n: usize, d: Vec<Bound>) -> SparseIP {
        SparseIP::new(Sense::Cover, m, n, entries, vec![rat_int(1); m], vec![rat_int(1); n], d)
    }

    #[test]
    fn cut_saturating_one_variable() {
        let inst = normalized(
            vec![(0, 0, rat(3, 4)), (0, 1, rat(3, 4))],
            1,
            2,
            vec![Bound::Finite(rat_int(1)), Bound::Infinite],
        );
        let f: BTreeSet<usize> = [0].into_iter().collect();
        let cut = kc_cut(&inst, 0, &f).unwrap().unwrap();
        assert_eq!(cut.rhs, rat(1, 4));
        assert_eq!(cut.coeffs, vec![(1, rat(1, 4))]);
    }

    #[test]
    fn empty_f_reproduces_row() {
        let inst = normalized(
            vec![(0, 0, rat(3, 4)), (0, 1, rat(3, 4))],
            1,
            2,
            vec![Bound::Finite(rat_int(1)), Bound::Infinite],
        );
        let cut = kc_cut(&inst, 0, &BTreeSet::new()).unwrap().unwrap();
        assert_eq!(cut.rhs, rat_int(1));
        assert_eq!(cut.coeffs, vec![(0, rat(3, 4)), (1, rat(3, 4))]);
    }

    #[test]
    fn saturated_f_gives_no_cut() {
        let inst = normalized(
            vec![(0, 0, rat(1, 2))],
            1,
            1,
            vec![Bound::Finite(rat_int(3))],
        );
        let f: BTreeSet<usize> = [0].into_iter().collect();
        assert_eq!(kc_cut(&inst, 0, &f).unwrap(), None);
    }

    #[test]
    fn cut_index_errors() {
        let inst = normalized(vec![(0, 0, rat(1, 2))], 1, 1, vec![Bound::Infinite]);
        assert!(matches!(
            kc_cut(&inst, 5, &BTreeSet::new()),
            Err(CoverError::IndexOutOfRange { .. })
        ));
        let f: BTreeSet<usize> = [7].into_iter().collect();
        assert!(matches!(kc_cut(&inst, 0, &f), Err(CoverError::IndexOutOfRange { .. })));
    }

    #[test]
    fn single_edge_cover_costs_one() {
        let inst = SparseIP::new(
            Sense::Cover,
            1,
            2,
            vec![(0, 0, rat_int(1)), (0, 1, rat_int(1))],
            vec![rat_int(1)],
            vec![rat_int(1), rat_int(1)],
            vec![Bound::Finite(rat_int(1)); 2],
        );
        let (sol, report) = solve_cover(&inst).unwrap();
        assert_eq!(sol.objective, rat_int(1));
        assert_eq!(report.k, 2);
        assert!(check_solution(&inst, &sol.x).is_empty());
    }

    #[test]
    fn triangle_cover_rounds_to_all_ones() {
        let inst = SparseIP::new(
            Sense::Cover,
            3,
            3,
            vec![
                (0, 0, rat_int(1)),
                (0, 1, rat_int(1)),
                (1, 1, rat_int(1)),
                (1, 2, rat_int(1)),
                (2, 0, rat_int(1)),
                (2, 2, rat_int(1)),
            ],
            vec![rat_int(1); 3],
            vec![rat_int(1); 3],
            vec![Bound::Finite(rat_int(1)); 3],
        );
        let (sol, report) = solve_cover(&inst).unwrap();
        assert_eq!(report.lp_value, rat(3, 2));
        assert_eq!(sol.x, vec![BigInt::from(1); 3]);
        assert_eq!(sol.objective, rat_int(3));
    }

    #[test]
    fn multiplicity_gap_fixture_solves_exactly() {
        // min x2 s.t. 3x1 + 3x2 >= 4, x1 <= 1: the plain relaxation says
        // 1/3, the truth is 1
        let inst = SparseIP::new(
            Sense::Cover,
            1,
            2,
            vec![(0, 0, rat_int(3)), (0, 1, rat_int(3))],
            vec![rat_int(4)],
            vec![rat_int(0), rat_int(1)],
            vec![Bound::Finite(rat_int(1)), Bound::Infinite],
        );
        let (sol, report) = solve_cover(&inst).unwrap();
        assert_eq!(sol.objective, rat_int(1));
        assert_eq!(report.rows_replaced, 1);
        let naive = lp::solve(&inst.naive_lp()).optimal().unwrap();
        assert_eq!(naive.value, rat(1, 3));
    }

    #[test]
    fn infeasible_cover_is_reported() {
        let inst = SparseIP::new(
            Sense::Cover,
            1,
            1,
            vec![(0, 0, rat_int(1))],
            vec![rat_int(1)],
            vec![rat_int(1)],
            vec![Bound::Finite(rat_int(0))],
        );
        assert_eq!(solve_cover(&inst).unwrap_err(), CoverError::Infeasible);
    }

    #[test]
    fn zero_demand_row_is_rejected() {
        let inst = SparseIP::new(
            Sense::Cover,
            1,
            1,
            vec![(0, 0, rat_int(1))],
            vec![rat_int(0)],
            vec![rat_int(1)],
            vec![Bound::Infinite],
        );
        assert_eq!(solve_cover(&inst).unwrap_err(), CoverError::ZeroDemandRow(0));
    }

    #[test]
    fn unnormalized_instances_are_normalized_first() {
        // same triangle but with demand 2 and coefficient 2: clipping and
        // scaling land in the same place
        let inst = SparseIP::new(
            Sense::Cover,
            1,
            2,
            vec![(0, 0, rat_int(5)), (0, 1, rat_int(2))],
            vec![rat_int(2)],
            vec![units(1), units(1)],
            vec![Bound::Finite(rat_int(1)); 2],
        );
        let (sol, _) = solve_cover(&inst).unwrap();
        assert!(check_solution(&inst, &sol.x).is_empty());
        assert_eq!(sol.objective, rat_int(1));
    }
}
