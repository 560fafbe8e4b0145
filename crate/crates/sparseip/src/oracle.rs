//! Exact reference solver.
//!
//! Depth-first branch and bound over integer assignments, intended for small
//! instances: it certifies the approximation solvers in tests and backs the
//! `oracle` command. Determinism matters more than raw speed here, so every
//! choice (branch order, value order, tie breaks) is fixed by index.

use crate::instance::{IntSolution, Sense, SparseIP};
use crate::rational::{Bound, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Optimal(IntSolution),
    Infeasible,
    Unbounded,
    /// Search aborted after visiting more nodes than the budget allows.
    BudgetExceeded,
}

/// Finite search ranges implied by demands and multiplicities.
///
/// For covering, a variable never needs to exceed the point where it alone
/// saturates every row it appears in. For packing, any positive entry caps
/// the variable outright; a variable with no entries and no multiplicity
/// bound is unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    pub upper: Vec<Bound>,
}

pub fn search_box(inst: &SparseIP) -> SearchBox {
    let cols = inst.cols();
    let mut upper = Vec::with_capacity(inst.ncols);
    for j in 0..inst.ncols {
        let implied = match inst.sense {
            Sense::Cover => {
                let mut need = BigInt::zero();
                for (i, a) in &cols[j] {
                    if inst.b[*i].is_positive() {
                        let q = (&inst.b[*i] / a).ceil().to_integer();
                        if q > need {
                            need = q;
                        }
                    }
                }
                Bound::Finite(Rational::from_integer(need))
            }
            Sense::Pack => {
                let mut cap: Option<BigInt> = None;
                for (i, a) in &cols[j] {
                    let q = (&inst.b[*i] / a).floor().to_integer();
                    let q = if q.is_negative() { BigInt::zero() } else { q };
                    cap = Some(match cap {
                        Some(c) if c <= q => c,
                        _ => q,
                    });
                }
                match cap {
                    Some(c) => Bound::Finite(Rational::from_integer(c)),
                    None => Bound::Infinite,
                }
            }
        };
        upper.push(match (&implied, &inst.d[j]) {
            (Bound::Finite(u), d) => Bound::Finite(d.min_with(u)),
            (Bound::Infinite, Bound::Finite(d)) => Bound::Finite(d.clone()),
            (Bound::Infinite, Bound::Infinite) => Bound::Infinite,
        });
    }
    SearchBox { upper }
}

struct Search<'a> {
    inst: &'a SparseIP,
    cols: Vec<Vec<(usize, Rational)>>,
    order: Vec<usize>,
    cap: Vec<BigInt>,
    fixed: Vec<bool>,
    resid: Vec<Rational>,
    x: Vec<BigInt>,
    value: Rational,
    best: Option<(Rational, Vec<BigInt>)>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    fn improves(&self, candidate: &Rational) -> bool {
        match &self.best {
            None => true,
            Some((bv, _)) => match self.inst.sense {
                Sense::Cover => candidate < bv,
                Sense::Pack => candidate > bv,
            },
        }
    }

    fn record(&mut self) {
        let v = self.value.clone();
        if self.improves(&v) {
            self.best = Some((v, self.x.clone()));
        }
    }

    /// Largest value of variable `j` still worth trying at this node.
    fn node_cap(&self, j: usize) -> BigInt {
        let mut cap = self.cap[j].clone();
        match self.inst.sense {
            Sense::Cover => {
                let mut need = BigInt::zero();
                for (i, a) in &self.cols[j] {
                    if self.resid[*i].is_positive() {
                        let q = (&self.resid[*i] / a).ceil().to_integer();
                        if q > need {
                            need = q;
                        }
                    }
                }
                if need < cap {
                    cap = need;
                }
            }
            Sense::Pack => {
                for (i, a) in &self.cols[j] {
                    let q = (&self.resid[*i] / a).floor().to_integer();
                    if q < cap {
                        cap = q;
                    }
                }
            }
        }
        cap
    }

    /// Additive lower bound on the cost still needed to satisfy the active
    /// rows, from a greedy family of rows with pairwise disjoint free
    /// support. `None` means some active row cannot be covered at all.
    fn cover_bound(&self, from: usize) -> Option<Rational> {
        let free: Vec<usize> = self.order[from..].to_vec();
        let mut used = vec![false; self.inst.ncols];
        let mut is_free = vec![false; self.inst.ncols];
        for &j in &free {
            is_free[j] = true;
        }
        let rows = self.inst.rows();
        let mut lb = Rational::zero();
        for i in 0..self.inst.nrows {
            if !self.resid[i].is_positive() {
                continue;
            }
            let support: Vec<&(usize, Rational)> =
                rows[i].iter().filter(|(j, _)| is_free[*j]).collect();
            if support.is_empty() {
                return None;
            }
            if support.iter().any(|(j, _)| used[*j]) {
                continue;
            }
            let mut rate: Option<Rational> = None;
            for (j, a) in &support {
                let r = &self.inst.c[*j] / a;
                rate = Some(match rate {
                    Some(cur) if cur <= r => cur,
                    _ => r,
                });
            }
            lb += &self.resid[i] * rate.unwrap();
            for (j, _) in &support {
                used[*j] = true;
            }
        }
        Some(lb)
    }

    fn pack_bound(&self, from: usize) -> Rational {
        let mut ub = self.value.clone();
        for &j in &self.order[from..] {
            if self.inst.c[j].is_positive() {
                ub += &self.inst.c[j] * Rational::from_integer(self.node_cap(j));
            }
        }
        ub
    }

    fn dfs(&mut self, depth: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        match self.inst.sense {
            Sense::Cover => {
                if self.resid.iter().all(|r| !r.is_positive()) {
                    self.record();
                    return;
                }
                if depth == self.order.len() {
                    return;
                }
                let Some(lb) = self.cover_bound(depth) else { return };
                if let Some((bv, _)) = &self.best {
                    if &(&self.value + lb) >= bv {
                        return;
                    }
                }
            }
            Sense::Pack => {
                self.record();
                if depth == self.order.len() {
                    return;
                }
                if let Some((bv, _)) = &self.best {
                    if &self.pack_bound(depth) <= bv {
                        return;
                    }
                }
            }
        }
        let j = self.order[depth];
        self.fixed[j] = true;
        let cap = self.node_cap(j);
        let mut v = cap;
        loop {
            if !v.is_zero() {
                let vr = Rational::from_integer(v.clone());
                for (i, a) in &self.cols[j].clone() {
                    self.resid[*i] -= a * &vr;
                }
                self.value += &self.inst.c[j] * &vr;
                self.x[j] = v.clone();
                self.dfs(depth + 1);
                self.x[j] = BigInt::zero();
                self.value -= &self.inst.c[j] * &vr;
                for (i, a) in &self.cols[j].clone() {
                    self.resid[*i] += a * &vr;
                }
            } else {
                self.dfs(depth + 1);
            }
            if self.aborted || v.is_zero() {
                break;
            }
            v -= BigInt::one();
        }
        self.fixed[j] = false;
    }
}

/// Greedy feasible cover used to seed the incumbent before the search.
fn greedy_cover(inst: &SparseIP, cap: &[BigInt]) -> Option<(Rational, Vec<BigInt>)> {
    let cols = inst.cols();
    let mut x = vec![BigInt::zero(); inst.ncols];
    let mut resid = inst.b.clone();
    loop {
        if resid.iter().all(|r| !r.is_positive()) {
            let value = inst.objective(&x);
            return Some((value, x));
        }
        // cheapest cost per unit of demand actually removed
        let mut pick: Option<(Rational, usize, BigInt)> = None;
        for j in 0..inst.ncols {
            let room = &cap[j] - &x[j];
            if !room.is_positive() {
                continue;
            }
            let mut need = BigInt::zero();
            for (i, a) in &cols[j] {
                if resid[*i].is_positive() {
                    let q = (&resid[*i] / a).ceil().to_integer();
                    if q > need {
                        need = q;
                    }
                }
            }
            if need.is_zero() {
                continue;
            }
            let v = if need < room { need } else { room };
            let vr = Rational::from_integer(v.clone());
            let mut gain = Rational::zero();
            for (i, a) in &cols[j] {
                if resid[*i].is_positive() {
                    let chunk = a * &vr;
                    gain += if chunk < resid[*i] { chunk } else { resid[*i].clone() };
                }
            }
            if !gain.is_positive() {
                continue;
            }
            let score = &inst.c[j] * &vr / gain;
            let better = match &pick {
                None => true,
                Some((s, _, _)) => score < *s,
            };
            if better {
                pick = Some((score, j, v));
            }
        }
        let (_, j, v) = pick?;
        let vr = Rational::from_integer(v.clone());
        for (i, a) in &cols[j] {
            resid[*i] -= a * &vr;
        }
        x[j] += v;
    }
}

fn greedy_pack(inst: &SparseIP, order: &[usize], box_cap: &[BigInt]) -> (Rational, Vec<BigInt>) {
    let cols = inst.cols();
    let mut x = vec![BigInt::zero(); inst.ncols];
    let mut resid = inst.b.clone();
    for &j in order {
        let mut v = box_cap[j].clone();
        for (i, a) in &cols[j] {
            let q = (&resid[*i] / a).floor().to_integer();
            if q < v {
                v = q;
            }
        }
        if v.is_positive() {
            let vr = Rational::from_integer(v.clone());
            for (i, a) in &cols[j] {
                resid[*i] -= a * &vr;
            }
            x[j] = v;
        }
    }
    let value = inst.objective(&x);
    (value, x)
}

/// Solves `inst` to proven optimality by exhaustive implicit enumeration.
pub fn solve_exact(inst: &SparseIP, budget: u64) -> OracleOutcome {
    if inst.sense == Sense::Pack && inst.b.iter().any(|bi| bi.is_negative()) {
        return OracleOutcome::Infeasible;
    }
    let sbox = search_box(inst);
    let mut cap = Vec::with_capacity(inst.ncols);
    for j in 0..inst.ncols {
        match &sbox.upper[j] {
            Bound::Finite(u) => cap.push(u.to_integer()),
            Bound::Infinite => {
                if inst.c[j].is_positive() {
                    return OracleOutcome::Unbounded;
                }
                cap.push(BigInt::zero());
            }
        }
    }

    let mut order: Vec<usize> = (0..inst.ncols).collect();
    order.sort_by(|&a, &b| inst.c[b].cmp(&inst.c[a]).then(a.cmp(&b)));

    let best = match inst.sense {
        Sense::Cover => greedy_cover(inst, &cap),
        Sense::Pack => Some(greedy_pack(inst, &order, &cap)),
    };

    let mut search = Search {
        inst,
        cols: inst.cols(),
        order,
        cap,
        fixed: vec![false; inst.ncols],
        resid: inst.b.clone(),
        x: vec![BigInt::zero(); inst.ncols],
        value: Rational::zero(),
        best,
        nodes: 0,
        budget,
        aborted: false,
    };
    search.dfs(0);
    if search.aborted {
        return OracleOutcome::BudgetExceeded;
    }
    match search.best {
        Some((_, x)) => OracleOutcome::Optimal(IntSolution::new(inst, x)),
        None => OracleOutcome::Infeasible,
    }
}
