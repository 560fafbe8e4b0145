//! Conflict structure over the 0-1 top-up, and its coloring.
//!
//! Two columns of the top-up clash when they share a row and at least one
//! of them is marked there; loading a whole clash-free subset of the top-up
//! keeps every row within capacity. Clashes are oriented (marked side
//! first), the indegree is at most the squared column sparsity, and a
//! digraph with indegree at most `d` always admits a proper `2d+1`-coloring
//! of its underlying adjacency.

use crate::instance::SparseIP;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

use super::iterate::IteratedOutcome;
use super::PackError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictDigraph {
    pub nodes: Vec<usize>,
    /// Arcs `(j, j')`: `j` is marked in some row where `j'` also appears.
    pub arcs: BTreeSet<(usize, usize)>,
}

impl ConflictDigraph {
    pub fn from_arcs(nodes: Vec<usize>, arcs: BTreeSet<(usize, usize)>) -> Self {
        let set: BTreeSet<usize> = nodes.iter().copied().collect();
        for (a, b) in &arcs {
            assert!(a != b, "self-arcs are meaningless here");
            assert!(set.contains(a) && set.contains(b), "arc endpoint outside node set");
        }
        ConflictDigraph { nodes, arcs }
    }

    /// Builds the digraph for a finished outcome and checks the indegree
    /// bound `k^2` implied by sparsity: a column appears in at most `k`
    /// rows, each holding at most `k` marked entries.
    pub fn from_outcome(inst: &SparseIP, out: &IteratedOutcome) -> Self {
        let k = inst.col_sparsity();
        let nodes: Vec<usize> =
            (0..inst.ncols).filter(|&j| out.x1[j].is_one()).collect();
        let in_top: BTreeSet<usize> = nodes.iter().copied().collect();
        let rows = inst.rows();
        let mut arcs = BTreeSet::new();
        for &(i, j) in &out.special {
            if !in_top.contains(&j) {
                continue;
            }
            for (j2, _) in &rows[i] {
                if *j2 != j && in_top.contains(j2) {
                    arcs.insert((j, *j2));
                }
            }
        }
        let mut indeg: BTreeMap<usize, usize> = BTreeMap::new();
        for (_, to) in &arcs {
            *indeg.entry(*to).or_insert(0) += 1;
        }
        for (node, deg) in indeg {
            assert!(
                deg <= k * k,
                "column {node} has conflict indegree {deg}, above {}",
                k * k
            );
        }
        ConflictDigraph { nodes, arcs }
    }

    fn neighbors(&self, j: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (a, b) in &self.arcs {
            if *a == j {
                out.insert(*b);
            }
            if *b == j {
                out.insert(*a);
            }
        }
        out
    }
}

/// Properly colors the underlying adjacency of `g` with colors in
/// `1..=2d+1`, provided every indegree is at most `d`.
///
/// Peel a node of outdegree at most `d` (least index when several qualify;
/// one always exists under the indegree bound, because average outdegree
/// equals average indegree), recurse on the rest, then color greedily on
/// the way back: each reinserted node sees at most `d` out-neighbors and
/// `d` in-neighbors already colored.
pub fn color_digraph(
    g: &ConflictDigraph,
    d: usize,
) -> Result<BTreeMap<usize, usize>, PackError> {
    let mut remaining: BTreeSet<usize> = g.nodes.iter().copied().collect();
    let mut order = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let mut peeled = None;
        for &j in &remaining {
            let outdeg = g
                .arcs
                .iter()
                .filter(|(a, b)| *a == j && remaining.contains(b))
                .count();
            if outdeg <= d {
                peeled = Some(j);
                break;
            }
        }
        let Some(j) = peeled else {
            return Err(PackError::DegreeContractViolated(d));
        };
        remaining.remove(&j);
        order.push(j);
    }

    let mut colors: BTreeMap<usize, usize> = BTreeMap::new();
    for &j in order.iter().rev() {
        let taken: BTreeSet<usize> =
            g.neighbors(j).iter().filter_map(|n| colors.get(n).copied()).collect();
        let mut color = 1;
        while taken.contains(&color) {
            color += 1;
        }
        assert!(color <= 2 * d + 1, "greedy color {color} exceeded 2d+1");
        colors.insert(j, color);
    }
    Ok(colors)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Disjoint 0-1 vectors summing to the top-up, each feasible on its own.
    pub classes: Vec<Vec<BigInt>>,
}

/// Splits the top-up into at most `2k^2 + 1` individually feasible pieces
/// by coloring the conflict digraph with `d = k^2`.
pub fn decompose(inst: &SparseIP, out: &IteratedOutcome) -> Result<Decomposition, PackError> {
    let k = inst.col_sparsity();
    let g = ConflictDigraph::from_outcome(inst, out);
    let colors = color_digraph(&g, k * k)?;
    let max_color = colors.values().copied().max().unwrap_or(0);
    let mut classes = Vec::with_capacity(max_color);
    for color in 1..=max_color {
        let mut y = vec![BigInt::zero(); inst.ncols];
        for (&j, &cj) in &colors {
            if cj == color {
                y[j] = BigInt::one();
            }
        }
        classes.push(y);
    }
    let mut total = vec![BigInt::zero(); inst.ncols];
    for y in &classes {
        for (i, act) in inst.row_activity(y).into_iter().enumerate() {
            assert!(act <= inst.b[i], "decomposition class overloads row {i}");
        }
        for (t, v) in total.iter_mut().zip(y) {
            *t += v;
        }
    }
    assert_eq!(total, out.x1, "classes must partition the top-up");
    Ok(Decomposition { classes })
}
