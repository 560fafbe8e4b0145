//! Sparse integer-program instances and the canonical text format.
//!
//! An instance is `min/max c.x  s.t.  Ax >= b (cover) or Ax <= b (pack),
//! 0 <= x <= d, x integral`, with nonnegative rational data. `A` is stored
//! sparsely as `(row, col, value)` triples sorted by `(row, col)`; `d`
//! entries may be infinite, finite ones must be integers.

use crate::lp::{LpProblem, LpRow, ObjSense, Relation, VarBounds};
use crate::rational::{
    format_bound, format_rational, is_nonneg_integer, parse_bound, parse_rational, Bound, Rational,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Cover,
    Pack,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sense::Cover => write!(f, "cover"),
            Sense::Pack => write!(f, "pack"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIP {
    pub sense: Sense,
    pub nrows: usize,
    pub ncols: usize,
    /// Sorted by `(row, col)`. Values must be positive to be valid.
    pub entries: Vec<(usize, usize, Rational)>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
    pub d: Vec<Bound>,
}

impl SparseIP {
    pub fn new(
        sense: Sense,
        nrows: usize,
        ncols: usize,
        mut entries: Vec<(usize, usize, Rational)>,
        b: Vec<Rational>,
        c: Vec<Rational>,
        d: Vec<Bound>,
    ) -> Self {
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        SparseIP { sense, nrows, ncols, entries, b, c, d }
    }

    /// Row-major adjacency: for each row, its `(col, value)` pairs in col order.
    pub fn rows(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut rows = vec![Vec::new(); self.nrows];
        for (i, j, v) in &self.entries {
            if *i < self.nrows {
                rows[*i].push((*j, v.clone()));
            }
        }
        rows
    }

    /// Column-major adjacency: for each column, its `(row, value)` pairs in row order.
    pub fn cols(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut cols = vec![Vec::new(); self.ncols];
        for (i, j, v) in &self.entries {
            if *j < self.ncols {
                cols[*j].push((*i, v.clone()));
            }
        }
        cols
    }

    /// Largest number of nonzeros in any row (0 when there are no rows).
    pub fn row_sparsity(&self) -> usize {
        self.rows().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest number of nonzeros in any column.
    pub fn col_sparsity(&self) -> usize {
        self.cols().iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn objective(&self, x: &[BigInt]) -> Rational {
        self.c
            .iter()
            .zip(x)
            .map(|(cj, xj)| cj * Rational::from_integer(xj.clone()))
            .sum()
    }

    /// `a_i . x` for every row.
    pub fn row_activity(&self, x: &[BigInt]) -> Vec<Rational> {
        let mut acts = vec![Rational::zero(); self.nrows];
        for (i, j, v) in &self.entries {
            acts[*i] += v * Rational::from_integer(x[*j].clone());
        }
        acts
    }

    /// The plain LP relaxation: rows kept verbatim (no normalization or
    /// clipping), bounds `0 <= x <= d`.
    pub fn naive_lp(&self) -> LpProblem {
        let (sense, rel) = match self.sense {
            Sense::Cover => (ObjSense::Min, Relation::Ge),
            Sense::Pack => (ObjSense::Max, Relation::Le),
        };
        let rows = self
            .rows()
            .into_iter()
            .zip(&self.b)
            .map(|(coeffs, rhs)| LpRow { coeffs, rel, rhs: rhs.clone() })
            .collect();
        let bounds = self
            .d
            .iter()
            .map(|dj| VarBounds { lower: Rational::zero(), upper: dj.clone() })
            .collect();
        LpProblem { sense, c: self.c.clone(), rows, bounds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LengthMismatch { field: &'static str, expected: usize, got: usize },
    IndexOutOfRange { row: usize, col: usize },
    NonPositiveEntry { row: usize, col: usize },
    DuplicateCoordinate { row: usize, col: usize },
    NegativeCost { col: usize },
    BadMultiplicity { col: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch { field, expected, got } => {
                write!(f, "{field} has length {got}, expected {expected}")
            }
            Violation::IndexOutOfRange { row, col } => {
                write!(f, "entry ({row}, {col}) out of range")
            }
            Violation::NonPositiveEntry { row, col } => {
                write!(f, "entry ({row}, {col}) is not positive")
            }
            Violation::DuplicateCoordinate { row, col } => {
                write!(f, "duplicate entry at ({row}, {col})")
            }
            Violation::NegativeCost { col } => write!(f, "c[{col}] is negative"),
            Violation::BadMultiplicity { col } => {
                write!(f, "d[{col}] is not a nonnegative integer or inf")
            }
        }
    }
}

/// Checks every structural invariant and returns all violations found.
pub fn validate(inst: &SparseIP) -> Vec<Violation> {
    let mut out = Vec::new();
    if inst.b.len() != inst.nrows {
        out.push(Violation::LengthMismatch { field: "b", expected: inst.nrows, got: inst.b.len() });
    }
    if inst.c.len() != inst.ncols {
        out.push(Violation::LengthMismatch { field: "c", expected: inst.ncols, got: inst.c.len() });
    }
    if inst.d.len() != inst.ncols {
        out.push(Violation::LengthMismatch { field: "d", expected: inst.ncols, got: inst.d.len() });
    }
    let mut prev: Option<(usize, usize)> = None;
    for (i, j, v) in &inst.entries {
        if *i >= inst.nrows || *j >= inst.ncols {
            out.push(Violation::IndexOutOfRange { row: *i, col: *j });
            continue;
        }
        if !v.is_positive() {
            out.push(Violation::NonPositiveEntry { row: *i, col: *j });
        }
        if prev == Some((*i, *j)) {
            out.push(Violation::DuplicateCoordinate { row: *i, col: *j });
        }
        prev = Some((*i, *j));
    }
    for (j, cj) in inst.c.iter().enumerate() {
        if cj.is_negative() {
            out.push(Violation::NegativeCost { col: j });
        }
    }
    for (j, dj) in inst.d.iter().enumerate() {
        if let Bound::Finite(r) = dj {
            if !is_nonneg_integer(r) {
                out.push(Violation::BadMultiplicity { col: j });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("row {0} has demand <= 0")]
    ZeroDemandRow(usize),
}

/// Scales every covering row so its demand is 1 and clips coefficients at 1.
/// Integer feasible sets are unchanged: scaling is an equivalence, and for
/// integral x >= 0 a coefficient above 1 covers the row alone iff 1 does.
pub fn normalize_cover(inst: &SparseIP) -> Result<SparseIP, NormalizeError> {
    assert_eq!(inst.sense, Sense::Cover, "normalize_cover wants a covering instance");
    let one = Rational::from_integer(BigInt::from(1));
    for (i, bi) in inst.b.iter().enumerate() {
        if !bi.is_positive() {
            return Err(NormalizeError::ZeroDemandRow(i));
        }
    }
    let entries = inst
        .entries
        .iter()
        .map(|(i, j, v)| {
            let scaled = v / &inst.b[*i];
            (*i, *j, if scaled > one { one.clone() } else { scaled })
        })
        .collect();
    Ok(SparseIP {
        sense: Sense::Cover,
        nrows: inst.nrows,
        ncols: inst.ncols,
        entries,
        b: vec![one; inst.nrows],
        c: inst.c.clone(),
        d: inst.d.clone(),
    })
}

/// Deletes packing columns that cannot take a positive value because a single
/// unit already overshoots some row (`A_ij > b_i`). Returns the reduced
/// instance and the deleted original column indices (sorted).
pub fn preprocess_pack(inst: &SparseIP) -> (SparseIP, Vec<usize>) {
    assert_eq!(inst.sense, Sense::Pack, "preprocess_pack wants a packing instance");
    let mut delete = vec![false; inst.ncols];
    for (i, j, v) in &inst.entries {
        if v > &inst.b[*i] {
            delete[*j] = true;
        }
    }
    let deleted: Vec<usize> = (0..inst.ncols).filter(|j| delete[*j]).collect();
    if deleted.is_empty() {
        return (inst.clone(), deleted);
    }
    let mut new_index = vec![usize::MAX; inst.ncols];
    let mut next = 0;
    for j in 0..inst.ncols {
        if !delete[j] {
            new_index[j] = next;
            next += 1;
        }
    }
    let entries = inst
        .entries
        .iter()
        .filter(|(_, j, _)| !delete[*j])
        .map(|(i, j, v)| (*i, new_index[*j], v.clone()))
        .collect();
    let keep = |v: &[Rational]| -> Vec<Rational> {
        v.iter().enumerate().filter(|(j, _)| !delete[*j]).map(|(_, x)| x.clone()).collect()
    };
    let d = inst
        .d
        .iter()
        .enumerate()
        .filter(|(j, _)| !delete[*j])
        .map(|(_, x)| x.clone())
        .collect();
    (
        SparseIP {
            sense: Sense::Pack,
            nrows: inst.nrows,
            ncols: next,
            entries,
            b: inst.b.clone(),
            c: keep(&inst.c),
            d,
        },
        deleted,
    )
}

/// A feasible-by-claim integral solution; `objective = c . x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSolution {
    pub x: Vec<BigInt>,
    pub objective: Rational,
}

impl IntSolution {
    pub fn new(inst: &SparseIP, x: Vec<BigInt>) -> Self {
        let objective = inst.objective(&x);
        IntSolution { x, objective }
    }

    pub fn zeros(inst: &SparseIP) -> Self {
        IntSolution::new(inst, vec![BigInt::zero(); inst.ncols])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionViolation {
    WrongLength { expected: usize, got: usize },
    Negative { col: usize },
    ExceedsMultiplicity { col: usize },
    /// `slack` is negative exactly when the row is violated: `a_i.x - b_i`
    /// for covering, `b_i - a_i.x` for packing.
    RowViolated { row: usize, slack: Rational },
    ObjectiveMismatch { stated: Rational, actual: Rational },
}

impl fmt::Display for SolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionViolation::WrongLength { expected, got } => {
                write!(f, "x has length {got}, expected {expected}")
            }
            SolutionViolation::Negative { col } => write!(f, "x[{col}] is negative"),
            SolutionViolation::ExceedsMultiplicity { col } => {
                write!(f, "x[{col}] exceeds d[{col}]")
            }
            SolutionViolation::RowViolated { row, slack } => {
                write!(f, "row {row} violated, slack {}", format_rational(slack))
            }
            SolutionViolation::ObjectiveMismatch { stated, actual } => write!(
                f,
                "stated objective {} but c.x = {}",
                format_rational(stated),
                format_rational(actual)
            ),
        }
    }
}

/// Re-verifies an integral vector against an instance from scratch.
pub fn check_solution(inst: &SparseIP, x: &[BigInt]) -> Vec<SolutionViolation> {
    let mut out = Vec::new();
    if x.len() != inst.ncols {
        out.push(SolutionViolation::WrongLength { expected: inst.ncols, got: x.len() });
        return out;
    }
    for (j, xj) in x.iter().enumerate() {
        if xj.is_negative() {
            out.push(SolutionViolation::Negative { col: j });
        }
        if !inst.d[j].ge(&Rational::from_integer(xj.clone())) {
            out.push(SolutionViolation::ExceedsMultiplicity { col: j });
        }
    }
    for (i, act) in inst.row_activity(x).into_iter().enumerate() {
        let slack = match inst.sense {
            Sense::Cover => act - &inst.b[i],
            Sense::Pack => inst.b[i].clone() - act,
        };
        if slack.is_negative() {
            out.push(SolutionViolation::RowViolated { row: i, slack });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// Parses the canonical instance document. Field order is fixed:
/// `sense, m, n, b, c, d, entries`.
pub fn parse_instance(text: &str) -> Result<SparseIP, ParseError> {
    let mut lines = text.lines().enumerate();
    let mut field = |name: &str| -> Result<(usize, String), ParseError> {
        for (no, raw) in lines.by_ref() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            return match line.split_once(':') {
                Some((k, v)) if k.trim() == name => Ok((no + 1, v.trim().to_string())),
                _ => perr(no + 1, format!("expected `{name}:`, found {line:?}")),
            };
        }
        perr(0, format!("missing field `{name}`"))
    };

    let (ln, sense) = field("sense")?;
    let sense = match sense.as_str() {
        "cover" => Sense::Cover,
        "pack" => Sense::Pack,
        other => return perr(ln, format!("unknown sense {other:?}")),
    };
    let (ln, m) = field("m")?;
    let nrows: usize = m.parse().map_err(|_| ParseError { line: ln, msg: format!("bad m {m:?}") })?;
    let (ln, n) = field("n")?;
    let ncols: usize = n.parse().map_err(|_| ParseError { line: ln, msg: format!("bad n {n:?}") })?;

    let rationals = |ln: usize, s: &str| -> Result<Vec<Rational>, ParseError> {
        s.split_whitespace()
            .map(|tok| parse_rational(tok).map_err(|e| ParseError { line: ln, msg: e.to_string() }))
            .collect()
    };
    let (ln, bs) = field("b")?;
    let b = rationals(ln, &bs)?;
    let (ln, cs) = field("c")?;
    let c = rationals(ln, &cs)?;
    let (ln, ds) = field("d")?;
    let d = ds
        .split_whitespace()
        .map(|tok| parse_bound(tok).map_err(|e| ParseError { line: ln, msg: e.to_string() }))
        .collect::<Result<Vec<_>, _>>()?;

    let (ln, rest) = field("entries")?;
    if !rest.is_empty() {
        return perr(ln, "entries header takes no inline value");
    }
    let mut entries = Vec::new();
    for (no, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return perr(no + 1, format!("entry needs `i j value`, found {line:?}"));
        }
        let i: usize = toks[0]
            .parse()
            .map_err(|_| ParseError { line: no + 1, msg: format!("bad row index {:?}", toks[0]) })?;
        let j: usize = toks[1]
            .parse()
            .map_err(|_| ParseError { line: no + 1, msg: format!("bad col index {:?}", toks[1]) })?;
        let v = parse_rational(toks[2])
            .map_err(|e| ParseError { line: no + 1, msg: e.to_string() })?;
        entries.push((i, j, v));
    }
    Ok(SparseIP::new(sense, nrows, ncols, entries, b, c, d))
}

/// Canonical serialization; `parse_instance` of the result is the identity,
/// and serializing a parsed canonical document is byte-identical.
pub fn serialize_instance(inst: &SparseIP) -> String {
    let mut out = String::new();
    out.push_str(&format!("sense: {}\n", inst.sense));
    out.push_str(&format!("m: {}\n", inst.nrows));
    out.push_str(&format!("n: {}\n", inst.ncols));
    let join_rats = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(" ");
    out.push_str(&format!("b: {}\n", join_rats(&inst.b)).replace("b: \n", "b:\n"));
    out.push_str(&format!("c: {}\n", join_rats(&inst.c)).replace("c: \n", "c:\n"));
    let ds = inst.d.iter().map(format_bound).collect::<Vec<_>>().join(" ");
    out.push_str(&format!("d: {ds}\n").replace("d: \n", "d:\n"));
    out.push_str("entries:\n");
    for (i, j, v) in &inst.entries {
        out.push_str(&format!("{i} {j} {}\n", format_rational(v)));
    }
    out
}

/// Parses a solution document (`x: ...` then `objective: ...`).
pub fn parse_solution(text: &str) -> Result<(Vec<BigInt>, Rational), ParseError> {
    let mut x: Option<Vec<BigInt>> = None;
    let mut objective: Option<Rational> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once(':') {
            Some(("x", v)) => {
                let parsed = v
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<BigInt>()
                            .map_err(|_| ParseError { line: no + 1, msg: format!("bad integer {tok:?}") })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                x = Some(parsed);
            }
            Some(("objective", v)) => {
                objective = Some(
                    parse_rational(v)
                        .map_err(|e| ParseError { line: no + 1, msg: e.to_string() })?,
                );
            }
            _ => return perr(no + 1, format!("unexpected line {line:?}")),
        }
    }
    match (x, objective) {
        (Some(x), Some(o)) => Ok((x, o)),
        _ => perr(0, "solution needs `x:` and `objective:` lines"),
    }
}

pub fn serialize_solution(x: &[BigInt], objective: &Rational) -> String {
    let xs = x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let head = if x.is_empty() { "x:\n".to_string() } else { format!("x: {xs}\n") };
    format!("{head}objective: {}\n", format_rational(objective))
}
