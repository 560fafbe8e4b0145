//! Exact-rational linear programming.
//!
//! Bounded-variable simplex, two phases with explicit artificial variables,
//! Bland's least-index rule for entering and leaving choices. Upper bounds
//! are handled natively: a nonbasic variable sits at either bound and a step
//! may end in a bound flip instead of a pivot. All arithmetic is exact, so
//! optima are true extreme points and `tight_rows` is an exact certificate.

use crate::rational::{Bound, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Hard cap on problem size (variables + rows); this solver is meant for
/// desk-scale instances and fails loudly beyond it.
pub const SIZE_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjSense {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpRow {
    pub coeffs: Vec<(usize, Rational)>,
    pub rel: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarBounds {
    /// Always finite.
    pub lower: Rational,
    pub upper: Bound,
}

impl VarBounds {
    pub fn nonneg() -> Self {
        VarBounds { lower: Rational::zero(), upper: Bound::Infinite }
    }

    pub fn range(lower: Rational, upper: Rational) -> Self {
        VarBounds { lower, upper: Bound::Finite(upper) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub sense: ObjSense,
    pub c: Vec<Rational>,
    pub rows: Vec<LpRow>,
    pub bounds: Vec<VarBounds>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub value: Rational,
    /// Rows satisfied with equality, an exact certificate of extremeness:
    /// the number of variables strictly between their bounds never exceeds
    /// `tight_rows.len()`.
    pub tight_rows: BTreeSet<usize>,
    pub basic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpResult::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// Variables of `sol` with non-integral value.
pub fn fractional_support(sol: &LpSolution) -> BTreeSet<usize> {
    sol.x
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_integer())
        .map(|(j, _)| j)
        .collect()
}

enum Stop {
    Optimal,
    Unbounded,
}

struct Simplex {
    m: usize,
    total: usize,
    tab: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    val: Vec<Rational>,
    at_upper: Vec<bool>,
    lower: Vec<Rational>,
    upper: Vec<Bound>,
    cost: Vec<Rational>,
}

impl Simplex {
    fn is_fixed(&self, j: usize) -> bool {
        matches!(&self.upper[j], Bound::Finite(u) if *u == self.lower[j])
    }

    /// Moves nonbasic `j` by `t` in direction `dir` (+1 up, -1 down) and
    /// adjusts every basic variable to keep the equations satisfied.
    fn step(&mut self, j: usize, dir: i32, t: &Rational) {
        if t.is_zero() {
            return;
        }
        let signed = if dir > 0 { t.clone() } else { -t.clone() };
        for i in 0..self.m {
            let a = &self.tab[i][j];
            if !a.is_zero() {
                let delta = a * &signed;
                let k = self.basis[i];
                self.val[k] -= delta;
            }
        }
        self.val[j] += signed;
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let leaving = self.basis[r];
        let piv = self.tab[r][j].clone();
        debug_assert!(!piv.is_zero());
        let inv = piv.recip();
        for v in self.tab[r].iter_mut() {
            if !v.is_zero() {
                *v *= inv.clone();
            }
        }
        for i in 0..self.m {
            if i == r || self.tab[i][j].is_zero() {
                continue;
            }
            let f = self.tab[i][j].clone();
            for col in 0..self.total {
                if !self.tab[r][col].is_zero() {
                    let sub = &f * &self.tab[r][col];
                    self.tab[i][col] -= sub;
                }
            }
        }
        self.basis[r] = j;
        self.in_basis[j] = true;
        self.in_basis[leaving] = false;
    }

    fn optimize(&mut self) -> Stop {
        loop {
            let y: Vec<Rational> = self.basis.iter().map(|&k| self.cost[k].clone()).collect();
            let mut entering: Option<(usize, i32)> = None;
            for j in 0..self.total {
                if self.in_basis[j] || self.is_fixed(j) {
                    continue;
                }
                let mut d = self.cost[j].clone();
                for i in 0..self.m {
                    if !y[i].is_zero() && !self.tab[i][j].is_zero() {
                        d -= &y[i] * &self.tab[i][j];
                    }
                }
                let dir = if self.at_upper[j] { -1 } else { 1 };
                if (dir > 0 && d.is_negative()) || (dir < 0 && d.is_positive()) {
                    entering = Some((j, dir));
                    break;
                }
            }
            let Some((j, dir)) = entering else { return Stop::Optimal };

            // ratio test: how far can j move before a basic variable or j's
            // own opposite bound blocks
            let mut row_limit: Option<(Rational, usize)> = None;
            for i in 0..self.m {
                let a = &self.tab[i][j];
                if a.is_zero() {
                    continue;
                }
                let k = self.basis[i];
                let rate = if dir > 0 { -a.clone() } else { a.clone() };
                let limit = if rate.is_positive() {
                    match &self.upper[k] {
                        Bound::Finite(u) => (u - &self.val[k]) / &rate,
                        Bound::Infinite => continue,
                    }
                } else {
                    (&self.val[k] - &self.lower[k]) / -rate
                };
                debug_assert!(!limit.is_negative());
                let better = match &row_limit {
                    None => true,
                    Some((best, r)) => {
                        limit < *best || (limit == *best && k < self.basis[*r])
                    }
                };
                if better {
                    row_limit = Some((limit, i));
                }
            }
            let span = match &self.upper[j] {
                Bound::Finite(u) => Some(u - &self.lower[j]),
                Bound::Infinite => None,
            };

            let pivot_here = match (&row_limit, &span) {
                (Some((l, _)), Some(s)) => l <= s,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => return Stop::Unbounded,
            };
            if pivot_here {
                let (t, r) = row_limit.unwrap();
                self.step(j, dir, &t);
                let k = self.basis[r];
                let rate_positive = if dir > 0 {
                    self.tab[r][j].is_negative()
                } else {
                    self.tab[r][j].is_positive()
                };
                if rate_positive {
                    let u = self.upper[k].as_finite().expect("blocking bound is finite").clone();
                    debug_assert_eq!(self.val[k], u);
                    self.val[k] = u;
                    self.at_upper[k] = true;
                } else {
                    debug_assert_eq!(self.val[k], self.lower[k]);
                    self.val[k] = self.lower[k].clone();
                    self.at_upper[k] = false;
                }
                self.pivot(r, j);
            } else {
                let t = span.unwrap();
                self.step(j, dir, &t);
                self.at_upper[j] = dir > 0;
            }
        }
    }
}

/// Solves `p` exactly. Returned optima are basic (extreme) solutions.
pub fn solve(p: &LpProblem) -> LpResult {
    let n = p.c.len();
    let m = p.rows.len();
    assert!(n + m <= SIZE_CAP, "LP too large: {} vars + {} rows > {SIZE_CAP}", n, m);
    assert_eq!(p.bounds.len(), n, "bounds length mismatch");
    for vb in &p.bounds {
        assert!(vb.upper.ge(&vb.lower), "lower bound above upper bound");
    }
    for row in &p.rows {
        for (j, _) in &row.coeffs {
            assert!(*j < n, "row references variable {j} out of {n}");
        }
    }

    // equation form: one slack per row, artificials only where the trivial
    // all-at-lower point does not already satisfy the row
    let nslack = m;
    let mut art_of_row: Vec<Option<usize>> = vec![None; m];
    let mut nart = 0;
    let mut residual = Vec::with_capacity(m);
    for (i, row) in p.rows.iter().enumerate() {
        let mut r = row.rhs.clone();
        for (j, a) in &row.coeffs {
            r -= a * &p.bounds[*j].lower;
        }
        let slack_ok = match row.rel {
            Relation::Le => !r.is_negative(),
            Relation::Ge => !r.is_positive(),
            Relation::Eq => false,
        };
        if !slack_ok {
            art_of_row[i] = Some(n + nslack + nart);
            nart += 1;
        }
        residual.push(r);
    }
    let total = n + nslack + nart;

    let mut lower = Vec::with_capacity(total);
    let mut upper = Vec::with_capacity(total);
    let mut val = Vec::with_capacity(total);
    for (j, vb) in p.bounds.iter().enumerate() {
        lower.push(vb.lower.clone());
        upper.push(vb.upper.clone());
        val.push(p.bounds[j].lower.clone());
    }
    for row in &p.rows {
        lower.push(Rational::zero());
        upper.push(match row.rel {
            Relation::Eq => Bound::Finite(Rational::zero()),
            _ => Bound::Infinite,
        });
        val.push(Rational::zero());
    }
    for _ in 0..nart {
        lower.push(Rational::zero());
        upper.push(Bound::Infinite);
        val.push(Rational::zero());
    }

    let mut tab = vec![vec![Rational::zero(); total]; m];
    let mut basis = Vec::with_capacity(m);
    for (i, row) in p.rows.iter().enumerate() {
        let slack_sign = match row.rel {
            Relation::Ge => -Rational::one(),
            _ => Rational::one(),
        };
        // scale so the basic column's coefficient is +1
        let scale = match art_of_row[i] {
            Some(_) => {
                if residual[i].is_negative() {
                    -Rational::one()
                } else {
                    Rational::one()
                }
            }
            None => match row.rel {
                Relation::Ge => -Rational::one(),
                _ => Rational::one(),
            },
        };
        for (j, a) in &row.coeffs {
            tab[i][*j] += a * &scale;
        }
        tab[i][n + i] = &slack_sign * &scale;
        match art_of_row[i] {
            Some(art) => {
                tab[i][art] = Rational::one();
                val[art] = residual[i].abs();
                basis.push(art);
            }
            None => {
                val[n + i] = match row.rel {
                    Relation::Ge => -residual[i].clone(),
                    _ => residual[i].clone(),
                };
                basis.push(n + i);
            }
        }
    }

    let mut in_basis = vec![false; total];
    for &k in &basis {
        in_basis[k] = true;
    }
    let mut sx = Simplex {
        m,
        total,
        tab,
        basis,
        in_basis,
        val,
        at_upper: vec![false; total],
        lower,
        upper,
        cost: vec![Rational::zero(); total],
    };

    if nart > 0 {
        for art in sx.total - nart..sx.total {
            sx.cost[art] = Rational::one();
        }
        match sx.optimize() {
            Stop::Optimal => {}
            Stop::Unbounded => unreachable!("phase-1 objective is bounded below"),
        }
        let infeas: Rational = (sx.total - nart..sx.total).map(|a| sx.val[a].clone()).sum();
        if !infeas.is_zero() {
            return LpResult::Infeasible;
        }
        for art in sx.total - nart..sx.total {
            sx.cost[art] = Rational::zero();
            sx.upper[art] = Bound::Finite(Rational::zero());
        }
    }

    for j in 0..n {
        sx.cost[j] = match p.sense {
            ObjSense::Min => p.c[j].clone(),
            ObjSense::Max => -p.c[j].clone(),
        };
    }
    match sx.optimize() {
        Stop::Unbounded => return LpResult::Unbounded,
        Stop::Optimal => {}
    }

    let x: Vec<Rational> = sx.val[..n].to_vec();
    let value: Rational = p.c.iter().zip(&x).map(|(cj, xj)| cj * xj).sum();
    let mut tight_rows = BTreeSet::new();
    for (i, row) in p.rows.iter().enumerate() {
        let act: Rational = row.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
        if act == row.rhs {
            tight_rows.insert(i);
        }
    }
    if cfg!(debug_assertions) {
        let between = x
            .iter()
            .enumerate()
            .filter(|(j, v)| {
                **v > p.bounds[*j].lower
                    && match &p.bounds[*j].upper {
                        Bound::Finite(u) => *v < u,
                        Bound::Infinite => true,
                    }
            })
            .count();
        debug_assert!(
            between <= tight_rows.len(),
            "basic solution certificate violated: {between} strictly-between vs {} tight",
            tight_rows.len()
        );
    }
    LpResult::Optimal(LpSolution { x, value, tight_rows, basic: true })
}
