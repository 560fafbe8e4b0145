//! Reduction from Max-3-Lin(2) to minimum-cost demand edge cover.
//!
//! Every column of the produced instance is an edge: exactly two equal
//! entries, one on a literal vertex and one on a hub or assignment vertex.
//! Heavy hub edges encode which side of a variable is picked; clusters of
//! parallel unit edges meter how many equations the pick falsifies. An
//! assignment falsifying `t` of the `m` equations extends to a cover of
//! cost exactly `24 m + 3 t`, built by [`hardness_certificate`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gen::GenError;
use crate::instance::{check_solution, validate, Sense, SparseIP};
use crate::rational::{rat_int, Bound, Rational};

/// One equation `x_i + x_j + x_k = parity (mod 2)` over distinct variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clause {
    pub vars: [usize; 3],
    pub parity: bool,
}

impl Clause {
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        let [i, j, k] = self.vars;
        (assignment[i] ^ assignment[j] ^ assignment[k]) == self.parity
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Max3Lin2 {
    pub nvars: usize,
    pub clauses: Vec<Clause>,
}

impl Max3Lin2 {
    pub fn new(nvars: usize, clauses: Vec<Clause>) -> Result<Self, GenError> {
        for (ci, cl) in clauses.iter().enumerate() {
            let [i, j, k] = cl.vars;
            if i == j || i == k || j == k {
                return Err(GenError::Parameter(format!("clause {ci} repeats a variable")));
            }
            if cl.vars.iter().any(|&v| v >= nvars) {
                return Err(GenError::Parameter(format!(
                    "clause {ci} names a variable outside 0..{nvars}"
                )));
            }
        }
        Ok(Max3Lin2 { nvars, clauses })
    }

    /// Number of equations mentioning `var`.
    pub fn degree(&self, var: usize) -> usize {
        self.clauses.iter().filter(|cl| cl.vars.contains(&var)).count()
    }

    pub fn unsatisfied(&self, assignment: &[bool]) -> usize {
        self.clauses.iter().filter(|cl| !cl.satisfied_by(assignment)).count()
    }
}

/// Parse one equation per line as `i j k C`, with 0-based variable indices
/// and right-hand side `C` in `{0, 1}`. Blank lines are skipped; the
/// variable count is one past the largest index seen.
pub fn parse_formula(text: &str) -> Result<Max3Lin2, GenError> {
    let mut clauses = Vec::new();
    let mut nvars = 0usize;
    for (ln, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 4 {
            return Err(GenError::Parameter(format!(
                "line {}: expected `i j k C`, got {} fields",
                ln + 1,
                fields.len()
            )));
        }
        let mut vars = [0usize; 3];
        for (slot, f) in vars.iter_mut().zip(&fields[..3]) {
            *slot = f.parse().map_err(|_| {
                GenError::Parameter(format!("line {}: bad variable index {f:?}", ln + 1))
            })?;
        }
        let parity = match fields[3] {
            "0" => false,
            "1" => true,
            other => {
                return Err(GenError::Parameter(format!(
                    "line {}: right-hand side must be 0 or 1, got {other:?}",
                    ln + 1
                )))
            }
        };
        nvars = nvars.max(vars.iter().max().unwrap() + 1);
        clauses.push(Clause { vars, parity });
    }
    Max3Lin2::new(nvars, clauses)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RowKind {
    Hub,
    Literal,
    Assignment,
}

#[derive(Debug, Clone)]
struct Layout {
    /// (variable, side) to the heavy column joining hub `x{v}` and `x{v}=side`.
    heavy: BTreeMap<(usize, bool), usize>,
    /// (clause, falsifying assignment, position) to the three parallel unit
    /// columns joining that assignment's vertex and the literal at `position`.
    triple: BTreeMap<(usize, [bool; 3], usize), [usize; 3]>,
}

/// The cover instance for a formula, with human-readable vertex and edge
/// names for reporting. Vertices are rows, edges are columns.
#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub instance: SparseIP,
    pub vertex_labels: Vec<String>,
    pub edge_labels: Vec<String>,
    layout: Layout,
}

fn side(b: bool) -> char {
    if b {
        '1'
    } else {
        '0'
    }
}

/// The four settings of the clause variables that falsify it, in
/// lexicographic order.
fn falsifying_assignments(cl: &Clause) -> Vec<[bool; 3]> {
    (0..8)
        .map(|bits| [(bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0])
        .filter(|a| (a[0] ^ a[1] ^ a[2]) != cl.parity)
        .collect()
}

fn assignment_label(cl: &Clause, a: &[bool; 3]) -> String {
    let mut s = String::new();
    for p in 0..3 {
        if p > 0 {
            s.push(',');
        }
        let _ = write!(s, "x{}={}", cl.vars[p], side(a[p]));
    }
    s
}

pub fn gen_hardness(formula: &Max3Lin2) -> GadgetInstance {
    let mut vertex_labels = Vec::new();
    let mut kinds = Vec::new();
    let mut b = Vec::new();

    // A hub and two literal vertices per variable that appears, all with
    // demand 4 deg(v). Variables in no equation get nothing.
    let mut hub_row = BTreeMap::new();
    let mut literal_row = BTreeMap::new();
    for v in 0..formula.nvars {
        let deg = formula.degree(v);
        if deg == 0 {
            continue;
        }
        let demand = rat_int(4 * deg as i64);
        hub_row.insert(v, vertex_labels.len());
        vertex_labels.push(format!("x{v}"));
        kinds.push(RowKind::Hub);
        b.push(demand.clone());
        for s in [false, true] {
            literal_row.insert((v, s), vertex_labels.len());
            vertex_labels.push(format!("x{v}={}", side(s)));
            kinds.push(RowKind::Literal);
            b.push(demand.clone());
        }
    }

    // One vertex of demand 3 per clause and falsifying setting of its
    // three variables.
    let mut assignment_row = BTreeMap::new();
    for (ci, cl) in formula.clauses.iter().enumerate() {
        for a in falsifying_assignments(cl) {
            assignment_row.insert((ci, a), vertex_labels.len());
            vertex_labels.push(assignment_label(cl, &a));
            kinds.push(RowKind::Assignment);
            b.push(rat_int(3));
        }
    }

    let mut edge_labels = Vec::new();
    let mut entries = Vec::new();
    let mut c = Vec::new();

    // Heavy edges: hub to each of its literals, weight and cost 4 deg(v).
    let mut heavy = BTreeMap::new();
    for (&v, &hub) in &hub_row {
        let w = rat_int(4 * formula.degree(v) as i64);
        for s in [false, true] {
            let lit = literal_row[&(v, s)];
            heavy.insert((v, s), edge_labels.len());
            entries.push((hub, edge_labels.len(), w.clone()));
            entries.push((lit, edge_labels.len(), w.clone()));
            edge_labels.push(format!("{} | {}", vertex_labels[hub], vertex_labels[lit]));
            c.push(w.clone());
        }
    }

    // Three parallel unit edges from each assignment vertex to each of its
    // three literal vertices. Parallel copies are distinct columns.
    let mut triple = BTreeMap::new();
    for (ci, cl) in formula.clauses.iter().enumerate() {
        for a in falsifying_assignments(cl) {
            let row = assignment_row[&(ci, a)];
            for p in 0..3 {
                let lit = literal_row[&(cl.vars[p], a[p])];
                let mut cols = [0usize; 3];
                for (copy, slot) in cols.iter_mut().enumerate() {
                    *slot = edge_labels.len();
                    entries.push((row, *slot, rat_int(1)));
                    entries.push((lit, *slot, rat_int(1)));
                    edge_labels.push(format!(
                        "{} | {} #{}",
                        vertex_labels[lit],
                        vertex_labels[row],
                        copy + 1
                    ));
                    c.push(rat_int(1));
                }
                triple.insert((ci, a, p), cols);
            }
        }
    }

    let nrows = vertex_labels.len();
    let ncols = edge_labels.len();
    let d = vec![Bound::Finite(rat_int(1)); ncols];
    let instance = SparseIP::new(Sense::Cover, nrows, ncols, entries, b, c, d);
    debug_assert!(validate(&instance).is_empty());

    // Every column really is an edge of the bipartite multigraph: two equal
    // entries, one on a literal and one on a hub or assignment vertex.
    for col in instance.cols() {
        assert_eq!(col.len(), 2);
        assert_eq!(col[0].1, col[1].1);
        assert!(matches!(
            (kinds[col[0].0], kinds[col[1].0]),
            (RowKind::Hub, RowKind::Literal)
                | (RowKind::Literal, RowKind::Hub)
                | (RowKind::Literal, RowKind::Assignment)
                | (RowKind::Assignment, RowKind::Literal)
        ));
    }

    GadgetInstance { instance, vertex_labels, edge_labels, layout: Layout { heavy, triple } }
}

/// A feasible cover of the gadget read off an assignment: the chosen edge
/// columns, their total cost `24 m + 3 t`, and the number `t` of falsified
/// equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub edges: Vec<usize>,
    pub cost: Rational,
    pub unsatisfied: usize,
}

pub fn hardness_certificate(
    formula: &Max3Lin2,
    assignment: &[bool],
) -> Result<Certificate, GenError> {
    if assignment.len() != formula.nvars {
        return Err(GenError::Parameter(format!(
            "assignment sets {} variables, formula has {}",
            assignment.len(),
            formula.nvars
        )));
    }
    let gadget = gen_hardness(formula);
    let layout = &gadget.layout;
    let mut edges = BTreeSet::new();

    // The heavy edge on the chosen side covers the hub and that literal.
    for v in 0..formula.nvars {
        if formula.degree(v) > 0 {
            edges.insert(layout.heavy[&(v, assignment[v])]);
        }
    }

    let mut unsatisfied = 0usize;
    for (ci, cl) in formula.clauses.iter().enumerate() {
        let r = [
            assignment[cl.vars[0]],
            assignment[cl.vars[1]],
            assignment[cl.vars[2]],
        ];
        if cl.satisfied_by(assignment) {
            // The falsifying settings are the three one-bit flips of r and
            // the all-bits flip. Each one-bit flip donates its whole triple
            // toward the flipped literal; the all-bits flip donates one edge
            // of each of its triples. Each unchosen literal ends up with 4,
            // each assignment vertex with 3, at a cost of 12.
            for p in 0..3 {
                let mut one = r;
                one[p] = !one[p];
                for col in layout.triple[&(ci, one, p)] {
                    edges.insert(col);
                }
            }
            let all = [!r[0], !r[1], !r[2]];
            for p in 0..3 {
                edges.insert(layout.triple[&(ci, all, p)][0]);
            }
        } else {
            unsatisfied += 1;
            // Now r itself is falsifying and the other settings are the
            // three two-bit flips. r's vertex takes its first triple whole;
            // each two-bit flip takes two edges toward each flipped literal,
            // again giving every unchosen literal 4, at a cost of 15.
            for col in layout.triple[&(ci, r, 0)] {
                edges.insert(col);
            }
            for (p, q) in [(0, 1), (1, 2), (0, 2)] {
                let mut two = r;
                two[p] = !two[p];
                two[q] = !two[q];
                for pos in [p, q] {
                    let cols = layout.triple[&(ci, two, pos)];
                    edges.insert(cols[0]);
                    edges.insert(cols[1]);
                }
            }
        }
    }

    let mut x = vec![BigInt::zero(); gadget.instance.ncols];
    for &e in &edges {
        x[e] = BigInt::one();
    }
    assert!(check_solution(&gadget.instance, &x).is_empty());
    let cost = gadget.instance.objective(&x);
    assert_eq!(cost, rat_int((24 * formula.clauses.len() + 3 * unsatisfied) as i64));
    Ok(Certificate { edges: edges.into_iter().collect(), cost, unsatisfied })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{solve_exact, OracleOutcome, DEFAULT_BUDGET};

    fn one_clause() -> Max3Lin2 {
        Max3Lin2::new(3, vec![Clause { vars: [0, 1, 2], parity: true }]).unwrap()
    }

    fn two_clauses() -> Max3Lin2 {
        Max3Lin2::new(
            5,
            vec![
                Clause { vars: [0, 1, 2], parity: true },
                Clause { vars: [0, 3, 4], parity: false },
            ],
        )
        .unwrap()
    }

    #[test]
    fn one_clause_builds_the_thirteen_vertex_cluster() {
        let g = gen_hardness(&one_clause());
        assert_eq!(g.instance.nrows, 13);
        assert_eq!(g.instance.ncols, 42);
        assert_eq!(g.vertex_labels[..3], ["x0", "x0=0", "x0=1"]);
        // Right-hand side 1, so the falsifying settings have even weight.
        assert_eq!(g.vertex_labels[9], "x0=0,x1=0,x2=0");
        assert_eq!(g.vertex_labels[10], "x0=0,x1=1,x2=1");
        for i in 0..9 {
            assert_eq!(g.instance.b[i], rat_int(4));
        }
        for i in 9..13 {
            assert_eq!(g.instance.b[i], rat_int(3));
        }
        assert_eq!(g.edge_labels[0], "x0 | x0=0");
        assert_eq!(g.edge_labels[1], "x0 | x0=1");
        assert_eq!(g.edge_labels[6], "x0=0 | x0=0,x1=0,x2=0 #1");
    }

    #[test]
    fn empty_formula_builds_nothing() {
        let f = parse_formula("").unwrap();
        assert_eq!(f.nvars, 0);
        let g = gen_hardness(&f);
        assert_eq!(g.instance.nrows, 0);
        assert_eq!(g.instance.ncols, 0);
    }

    #[test]
    fn shared_variable_demand_scales_with_degree() {
        let g = gen_hardness(&two_clauses());
        let hub = g.vertex_labels.iter().position(|l| l == "x0").unwrap();
        assert_eq!(g.instance.b[hub], rat_int(8));
        let other = g.vertex_labels.iter().position(|l| l == "x3").unwrap();
        assert_eq!(g.instance.b[other], rat_int(4));
        assert_eq!(g.instance.nrows, 5 * 3 + 2 * 4);
        assert_eq!(g.instance.ncols, 5 * 2 + 2 * 36);
    }

    #[test]
    fn satisfying_assignment_costs_twenty_four_per_clause() {
        let cert = hardness_certificate(&one_clause(), &[true, false, false]).unwrap();
        assert_eq!(cert.unsatisfied, 0);
        assert_eq!(cert.cost, rat_int(24));
        assert_eq!(cert.edges.len(), 15);
    }

    #[test]
    fn each_falsified_clause_costs_three_more() {
        let cert = hardness_certificate(&one_clause(), &[false, false, false]).unwrap();
        assert_eq!(cert.unsatisfied, 1);
        assert_eq!(cert.cost, rat_int(27));
        assert_eq!(cert.edges.len(), 18);
    }

    #[test]
    fn certificate_cost_tracks_every_assignment() {
        let f = two_clauses();
        for bits in 0..32u32 {
            let a: Vec<bool> = (0..5).map(|v| (bits >> v) & 1 == 1).collect();
            let t = f.unsatisfied(&a);
            let cert = hardness_certificate(&f, &a).unwrap();
            assert_eq!(cert.unsatisfied, t);
            assert_eq!(cert.cost, rat_int(48 + 3 * t as i64));
        }
    }

    #[test]
    fn formula_parsing_accepts_and_rejects() {
        let f = parse_formula("0 1 2 1\n\n3 4 0 0\n").unwrap();
        assert_eq!(f.nvars, 5);
        assert_eq!(f.clauses.len(), 2);
        assert_eq!(f.clauses[0], Clause { vars: [0, 1, 2], parity: true });
        assert_eq!(f.clauses[1], Clause { vars: [3, 4, 0], parity: false });
        assert!(parse_formula("0 1 2").is_err());
        assert!(parse_formula("0 1 2 2").is_err());
        assert!(parse_formula("0 0 1 1").is_err());
        assert!(parse_formula("x 1 2 1").is_err());
        assert!(Max3Lin2::new(2, vec![Clause { vars: [0, 1, 2], parity: false }]).is_err());
        assert!(hardness_certificate(&one_clause(), &[true]).is_err());
    }

    #[test]
    fn the_certificate_is_optimal_for_one_clause() {
        let g = gen_hardness(&one_clause());
        match solve_exact(&g.instance, DEFAULT_BUDGET) {
            OracleOutcome::Optimal(sol) => assert_eq!(sol.objective, rat_int(24)),
            other => panic!("expected an optimum, got {:?}", other),
        }
    }
}
