//! A 4-approximation for packing programs whose columns touch at most two
//! rows.
//!
//! Such columns are edges (or loops) on the row set, so the fractional
//! support of a basic optimum is a graph in which every connected
//! component carries at most one cycle. Removing one edge per cycle leaves
//! a forest, on which the iterated rounding runs with a drop threshold of
//! 1; the resulting top-up conflict graph is then 2-colored. The best of
//! floor, removed matching, and the two color classes is within a factor
//! of 4 of the LP bound.

use crate::instance::{check_solution, preprocess_pack, IntSolution, Sense, SparseIP};
use crate::rational::{rat_int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::conflict::decompose;
use super::iterate::{self, IteratedOutcome};
use super::{expand_columns, pick_best, PackError, PackReport};

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets((0..n).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let root = self.find(self.0[i]);
            self.0[i] = root;
        }
        self.0[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Picks one column per cycle of the graph formed by the given columns
/// (vertices are rows; support size 1 is a loop, 2 an edge). Errors if any
/// component carries two or more independent cycles.
fn cycle_transversal(
    inst: &SparseIP,
    undecided: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>, PackError> {
    let cols = inst.cols();
    let mut loop_cols: Vec<(usize, usize)> = Vec::new();
    let mut edge_cols: Vec<(usize, usize, usize)> = Vec::new();
    for &j in undecided {
        let support: Vec<usize> = cols[j].iter().map(|(i, _)| *i).collect();
        match support.as_slice() {
            [r] => loop_cols.push((j, *r)),
            [r, s] => {
                assert_ne!(r, s, "duplicate coordinates should have been rejected");
                edge_cols.push((j, *r, *s));
            }
            [] => return Err(PackError::Internal("fractional column with no entries")),
            _ => unreachable!("column sparsity was checked"),
        }
    }

    let mut sets = DisjointSets::new(inst.nrows);
    for &(_, r, s) in &edge_cols {
        sets.union(r, s);
    }
    let mut verts: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comp_loops: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(j, r) in &loop_cols {
        let root = sets.find(r);
        verts.entry(root).or_default().insert(r);
        *col_count.entry(root).or_default() += 1;
        comp_loops.entry(root).or_default().push(j);
    }
    for &(_, r, s) in &edge_cols {
        let root = sets.find(r);
        verts.entry(root).or_default().extend([r, s]);
        *col_count.entry(root).or_default() += 1;
    }

    // peel leaves off the edge-only graph; what survives is exactly the
    // union of the proper cycles
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (idx, &(_, r, s)) in edge_cols.iter().enumerate() {
        *deg.entry(r).or_default() += 1;
        *deg.entry(s).or_default() += 1;
        incident.entry(r).or_default().push(idx);
        incident.entry(s).or_default().push(idx);
    }
    let mut removed = vec![false; edge_cols.len()];
    let mut peeled: BTreeSet<usize> = BTreeSet::new();
    let mut queue: VecDeque<usize> =
        deg.iter().filter(|(_, d)| **d <= 1).map(|(r, _)| *r).collect();
    while let Some(r) = queue.pop_front() {
        if peeled.contains(&r) || deg[&r] > 1 {
            continue;
        }
        peeled.insert(r);
        for &idx in &incident[&r] {
            if removed[idx] {
                continue;
            }
            removed[idx] = true;
            let (_, a, b) = edge_cols[idx];
            let other = if a == r { b } else { a };
            let entry = deg.get_mut(&other).expect("endpoint was counted");
            *entry -= 1;
            if *entry <= 1 && !peeled.contains(&other) {
                queue.push_back(other);
            }
        }
    }
    let mut cycle_edge: BTreeMap<usize, usize> = BTreeMap::new();
    for (idx, &(j, r, _)) in edge_cols.iter().enumerate() {
        if !removed[idx] {
            let root = sets.find(r);
            let pick = cycle_edge.entry(root).or_insert(j);
            if j < *pick {
                *pick = j;
            }
        }
    }

    let mut transversal = BTreeSet::new();
    for (root, vs) in &verts {
        let e = col_count[root];
        let v = vs.len();
        let cycles = e + 1 - v;
        if cycles >= 2 {
            return Err(PackError::StructureViolation { cycles });
        }
        if cycles == 0 {
            continue;
        }
        if let Some(ls) = comp_loops.get(root) {
            assert_eq!(ls.len(), 1, "a one-cycle component holds at most one loop");
            assert!(
                !cycle_edge.contains_key(root),
                "loop and closed walk cannot coexist at one cycle"
            );
            transversal.insert(ls[0]);
        } else {
            let j = *cycle_edge
                .get(root)
                .ok_or(PackError::Internal("peeling erased an expected cycle"))?;
            transversal.insert(j);
        }
    }
    Ok(transversal)
}

/// Breadth-first proper 2-coloring; None when an odd cycle blocks it.
pub(crate) fn two_color(
    nodes: &[usize],
    adjacent: &BTreeMap<usize, BTreeSet<usize>>,
) -> Option<BTreeMap<usize, u8>> {
    let mut color: BTreeMap<usize, u8> = BTreeMap::new();
    for &start in nodes {
        if color.contains_key(&start) {
            continue;
        }
        color.insert(start, 0);
        let mut queue = VecDeque::from([start]);
        while let Some(j) = queue.pop_front() {
            let cj = color[&j];
            for &n in adjacent.get(&j).into_iter().flatten() {
                match color.get(&n) {
                    None => {
                        color.insert(n, 1 - cj);
                        queue.push_back(n);
                    }
                    Some(&cn) if cn == cj => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color)
}

/// Conflict adjacency restricted to the top-up support: two loaded columns
/// clash when they share a row in which at least one of them is marked.
fn conflict_adjacency(
    inst: &SparseIP,
    out: &IteratedOutcome,
) -> (Vec<usize>, BTreeMap<usize, BTreeSet<usize>>) {
    let loaded: Vec<usize> = (0..inst.ncols).filter(|&j| out.x1[j].is_one()).collect();
    let in_top: BTreeSet<usize> = loaded.iter().copied().collect();
    let rows = inst.rows();
    let mut adjacent: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(i, j) in &out.special {
        if !in_top.contains(&j) {
            continue;
        }
        for (j2, _) in &rows[i] {
            if *j2 != j && in_top.contains(j2) {
                adjacent.entry(j).or_default().insert(*j2);
                adjacent.entry(*j2).or_default().insert(j);
            }
        }
    }
    (loaded, adjacent)
}

/// Rounds a packing program with column sparsity at most 2 to within a
/// factor 4 of its LP bound.
///
/// If the conflict graph of the top-up turns out not to be bipartite the
/// solver falls back to the general decomposition; the report then flags
/// `fallback_used` and certifies 11 instead of 4.
pub fn solve_pack_2cs(inst: &SparseIP) -> Result<(IntSolution, PackReport), PackError> {
    assert_eq!(inst.sense, Sense::Pack, "solve_pack_2cs expects a packing instance");
    let got = inst.col_sparsity();
    if got > 2 {
        return Err(PackError::ColumnsTooDense { got });
    }
    iterate::check_capacities(inst)?;
    let (pinst, deleted) = preprocess_pack(inst);
    iterate::check_bounded(&pinst)?;

    let (lp_value, x0, mut undecided) = iterate::initial_extreme(&pinst)?;
    let matching = cycle_transversal(&pinst, &undecided)?;
    for j in &matching {
        undecided.remove(j);
    }
    let mut m_vec = vec![BigInt::zero(); pinst.ncols];
    let mut m_cost = Rational::zero();
    let mut m_rows: BTreeSet<usize> = BTreeSet::new();
    let cols = pinst.cols();
    for &j in &matching {
        m_vec[j] = BigInt::one();
        m_cost += &pinst.c[j];
        for (i, _) in &cols[j] {
            assert!(m_rows.insert(*i), "cycle transversal columns must not share rows");
        }
    }
    assert!(check_solution(&pinst, &m_vec).is_empty(), "cycle transversal infeasible");

    let (x1, special, trace) = iterate::iterate_loop(&pinst, &x0, undecided, 1)?;
    let out = IteratedOutcome {
        x0,
        x1,
        special,
        trace,
        // the loop ran without the transversal columns, so it only has to
        // recover the relaxation value minus their worth
        lp_value: &lp_value - &m_cost,
    };
    iterate::assert_outcome(&pinst, &out, 1);

    let (loaded, adjacent) = conflict_adjacency(&pinst, &out);
    let mut candidates = vec![("floor".to_string(), out.x0.clone()), ("matching".to_string(), m_vec)];
    let mut fallback_used = false;
    match two_color(&loaded, &adjacent) {
        Some(coloring) => {
            let mut classes = vec![vec![BigInt::zero(); pinst.ncols]; 2];
            for (&j, &cj) in &coloring {
                classes[cj as usize][j] = BigInt::one();
            }
            let mut sum = vec![BigInt::zero(); pinst.ncols];
            for (t, class) in classes.into_iter().enumerate() {
                for (s, v) in sum.iter_mut().zip(&class) {
                    *s += v;
                }
                candidates.push((format!("class-{}", t + 1), class));
            }
            assert_eq!(sum, out.x1, "color classes must partition the top-up");
        }
        None => {
            fallback_used = true;
            let split = decompose(&pinst, &out)?;
            for (t, y) in split.classes.into_iter().enumerate() {
                candidates.push((format!("class-{}", t + 1), y));
            }
        }
    }
    for (name, x) in &candidates {
        assert!(check_solution(&pinst, x).is_empty(), "candidate {name} infeasible");
    }

    let (best, values) = pick_best(&pinst, &candidates);
    let total: Rational = values.iter().map(|(_, v)| v.clone()).sum();
    assert!(total >= lp_value, "candidates together must carry the relaxation value");
    let ratio_bound = rat_int(if fallback_used { 11 } else { 4 });
    assert!(
        values[best].1.clone() * &ratio_bound >= lp_value,
        "certified 2-sparse packing ratio failed"
    );

    let x = expand_columns(inst.ncols, &deleted, &candidates[best].1);
    assert!(check_solution(inst, &x).is_empty(), "rounded packing infeasible");
    let report = PackReport {
        k: pinst.col_sparsity().max(1),
        lp_value,
        ratio_bound,
        candidates: values.clone(),
        chosen: values[best].0.clone(),
        iterations: out.trace.len(),
        width: None,
        fallback_used,
    };
    Ok((IntSolution::new(inst, x), report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{solve_exact, OracleOutcome, DEFAULT_BUDGET};
    use crate::rational::{rat, Bound};

    fn ones(n: usize) -> Vec<Rational> {
        vec![Rational::one(); n]
    }

    fn d_ones(n: usize) -> Vec<Bound> {
        vec![Bound::Finite(Rational::one()); n]
    }

    fn opt(inst: &SparseIP) -> Rational {
        match solve_exact(inst, DEFAULT_BUDGET) {
            OracleOutcome::Optimal(sol) => sol.objective,
            other => panic!("oracle did not finish: {other:?}"),
        }
    }

    // triangle: three rows, each column an edge of the 3-cycle
    fn triangle(b: Vec<Rational>) -> SparseIP {
        SparseIP::new(
            Sense::Pack,
            3,
            3,
            vec![
                (0, 0, Rational::one()),
                (1, 0, Rational::one()),
                (1, 1, Rational::one()),
                (2, 1, Rational::one()),
                (2, 2, Rational::one()),
                (0, 2, Rational::one()),
            ],
            b,
            ones(3),
            d_ones(3),
        )
    }

    #[test]
    fn odd_cycle_support_yields_a_matching_edge() {
        let inst = triangle(ones(3));
        let (sol, report) = solve_pack_2cs(&inst).unwrap();
        assert_eq!(report.lp_value, rat(3, 2));
        assert_eq!(report.candidates[1], ("matching".to_string(), Rational::one()));
        assert_eq!(report.chosen, "matching");
        assert_eq!(sol.objective, Rational::one());
        assert_eq!(sol.objective, opt(&inst));
        assert!(!report.fallback_used);
        assert_eq!(report.ratio_bound, rat_int(4));
    }

    #[test]
    fn even_cycle_is_solved_exactly() {
        // four rows in a cycle; the extreme optimum is already integral
        let inst = SparseIP::new(
            Sense::Pack,
            4,
            4,
            vec![
                (0, 0, Rational::one()),
                (1, 0, Rational::one()),
                (1, 1, Rational::one()),
                (2, 1, Rational::one()),
                (2, 2, Rational::one()),
                (3, 2, Rational::one()),
                (3, 3, Rational::one()),
                (0, 3, Rational::one()),
            ],
            ones(4),
            ones(4),
            d_ones(4),
        );
        let (sol, report) = solve_pack_2cs(&inst).unwrap();
        assert_eq!(report.lp_value, rat_int(2));
        assert_eq!(sol.objective, rat_int(2));
        assert_eq!(report.chosen, "floor");
        assert_eq!(report.candidates[1].1, Rational::zero());
        assert_eq!(sol.objective, opt(&inst));
    }

    #[test]
    fn forest_takes_no_matching_edge() {
        // path on three rows with a fractional middle capacity
        let inst = SparseIP::new(
            Sense::Pack,
            3,
            2,
            vec![
                (0, 0, Rational::one()),
                (1, 0, Rational::one()),
                (1, 1, Rational::one()),
                (2, 1, Rational::one()),
            ],
            vec![Rational::one(), rat(3, 2), Rational::one()],
            ones(2),
            d_ones(2),
        );
        let (sol, report) = solve_pack_2cs(&inst).unwrap();
        assert_eq!(report.lp_value, rat(3, 2));
        assert_eq!(report.candidates[1].1, Rational::zero());
        assert_eq!(sol.objective, Rational::one());
        assert_eq!(sol.objective, opt(&inst));
        // pigeonhole: the larger class carries at least half the top-up
        let c1 = &report.candidates[2].1;
        let c2 = &report.candidates[3].1;
        let topup = c1 + c2;
        assert!(c1.max(c2) * rat_int(2) >= topup);
    }

    #[test]
    fn loop_columns_form_their_own_cycles() {
        let inst = SparseIP::new(
            Sense::Pack,
            2,
            3,
            vec![(0, 0, rat(2, 3)), (0, 1, rat(2, 3)), (1, 2, rat(1, 2))],
            ones(2),
            ones(3),
            d_ones(3),
        );
        let (sol, report) = solve_pack_2cs(&inst).unwrap();
        assert_eq!(report.lp_value, rat(5, 2));
        assert_eq!(report.chosen, "floor");
        assert_eq!(sol.objective, rat_int(2));
        assert_eq!(report.candidates[1].1, Rational::one());
        assert_eq!(sol.objective, opt(&inst));
    }

    #[test]
    fn shared_row_conflict_splits_classes() {
        // lopsided triangle: both leftover columns end up loaded, and they
        // clash through the row where one of them is marked
        let inst = triangle(vec![Rational::one(), Rational::one(), rat(3, 2)]);
        let (sol, report) = solve_pack_2cs(&inst).unwrap();
        assert_eq!(report.lp_value, rat(7, 4));
        assert_eq!(sol.objective, Rational::one());
        assert_eq!(sol.objective, opt(&inst));
        assert!(!report.fallback_used);
        let class_values: Vec<&Rational> =
            report.candidates[2..].iter().map(|(_, v)| v).collect();
        assert_eq!(class_values, [&Rational::one(), &Rational::one()]);
        assert_eq!(report.iterations, 2);
    }

    #[test]
    fn three_entry_columns_are_rejected() {
        let inst = SparseIP::new(
            Sense::Pack,
            3,
            1,
            vec![(0, 0, Rational::one()), (1, 0, Rational::one()), (2, 0, Rational::one())],
            ones(3),
            ones(1),
            d_ones(1),
        );
        assert_eq!(
            solve_pack_2cs(&inst).unwrap_err(),
            PackError::ColumnsTooDense { got: 3 }
        );
    }

    #[test]
    fn two_color_rejects_odd_cycles_only() {
        fn link(adj: &mut BTreeMap<usize, BTreeSet<usize>>, a: usize, b: usize) {
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
        let mut adj = BTreeMap::new();
        link(&mut adj, 0, 1);
        link(&mut adj, 1, 2);
        let colors = two_color(&[0, 1, 2], &adj).expect("paths are bipartite");
        assert_ne!(colors[&0], colors[&1]);
        assert_ne!(colors[&1], colors[&2]);
        link(&mut adj, 2, 0);
        assert!(two_color(&[0, 1, 2], &adj).is_none());
    }
}
