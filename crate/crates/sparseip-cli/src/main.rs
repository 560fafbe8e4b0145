//! Command-line front end for the sparse covering/packing toolkit.
//!
//! Exit codes: 0 success, 1 failed verdict (an infeasible `check` or a
//! `campaign` observing a broken ratio bound), 2 input error, 3 internal
//! invariant failure.

mod report;

use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use sparseip::cover::{solve_cover, CoverError};
use sparseip::gen::{
    gen_gap_fixture, gen_hardness, gen_random, hardness_certificate, parse_formula, DMode,
    GapFixture, GenError, RandomSpec, SparsityMode,
};
use sparseip::instance::{
    check_solution, parse_instance, parse_solution, serialize_instance, serialize_solution,
    validate, SolutionViolation,
};
use sparseip::oracle::{solve_exact, OracleOutcome, DEFAULT_BUDGET};
use sparseip::pack::{solve_pack, solve_pack_2cs, solve_pack_width, PackError, PackReport};
use sparseip::rational::format_rational;
use sparseip::{Rational, Sense, SparseIP};

use report::{digest_hex, observed_ratio, Format, OracleField, RunReport, Solved};

#[derive(Parser)]
#[command(
    name = "sparseip",
    version,
    about = "Solvers, generators, and an exact oracle for sparse covering and packing integer programs"
)]
struct Cli {
    /// Output format for reports and error documents.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance within the guaranteed factor of its family.
    Solve {
        /// Instance file, or `-` for standard input.
        path: String,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        /// Also run the exact oracle and report the observed ratio.
        #[arg(long)]
        oracle: bool,
        /// Node budget for the oracle search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Re-verify a solution file against an instance from scratch.
    Check {
        /// Instance file, or `-` for standard input.
        path: String,
        /// Solution file.
        solution: String,
    },
    /// Solve exactly by branch and bound (desk-scale instances only).
    Oracle {
        /// Instance file, or `-` for standard input.
        path: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Emit a seeded random instance.
    GenRandom(GenRandomArgs),
    /// Emit a one-row fixture whose naive-relaxation gap is exactly M.
    GenGap {
        /// naive: one scaled row; multiplicity: the gap survives harmless
        /// coefficients because a capped cheap column blocks the relaxation.
        #[arg(long, value_enum)]
        fixture: FixtureArg,
        /// The gap coefficient M.
        #[arg(short = 'M', long)]
        coefficient: u64,
        /// Write the instance here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the demand edge cover gadget for a Max-3-Lin(2) formula.
    GenHardness {
        /// Formula file with one `i j k C` equation per line, or `-`.
        formula: String,
        /// Also write the vertex and edge label side-table to this file.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Write the instance here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Emit the gadget cover an assignment induces, as a solution document.
    CertifyHardness {
        /// Formula file with one `i j k C` equation per line, or `-`.
        formula: String,
        /// One 0/1 character per variable.
        #[arg(long)]
        assignment: String,
        /// Write the solution here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate, solve, and oracle a family; exit 1 on any bound violation.
    Campaign(CampaignArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    /// cover-k for covering; pack-2cs or pack-general by column sparsity,
    /// also trying pack-width and keeping the better value.
    Auto,
    #[value(name = "cover-k")]
    CoverK,
    #[value(name = "pack-general")]
    PackGeneral,
    #[value(name = "pack-2cs")]
    Pack2cs,
    #[value(name = "pack-width")]
    PackWidth,
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseArg {
    Cover,
    Pack,
}

impl From<SenseArg> for Sense {
    fn from(s: SenseArg) -> Sense {
        match s {
            SenseArg::Cover => Sense::Cover,
            SenseArg::Pack => Sense::Pack,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Row,
    Col,
}

#[derive(Clone, Copy, ValueEnum)]
enum DModeArg {
    AllOne,
    Small,
    Mixed,
    Unbounded,
}

impl From<DModeArg> for DMode {
    fn from(m: DModeArg) -> DMode {
        match m {
            DModeArg::AllOne => DMode::AllOne,
            DModeArg::Small => DMode::Small,
            DModeArg::Mixed => DMode::Mixed,
            DModeArg::Unbounded => DMode::Unbounded,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureArg {
    Naive,
    Multiplicity,
}

impl From<FixtureArg> for GapFixture {
    fn from(f: FixtureArg) -> GapFixture {
        match f {
            FixtureArg::Naive => GapFixture::NaiveM,
            FixtureArg::Multiplicity => GapFixture::MultiplicityM,
        }
    }
}

#[derive(Args)]
struct GenRandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    sense: SenseArg,
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Sparsity budget, per row or per column depending on --mode.
    #[arg(short = 'k', long = "sparsity")]
    k: usize,
    /// Defaults to row for covering and col for packing.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Largest denominator used for matrix entries.
    #[arg(long, default_value_t = 5)]
    den_bound: u32,
    #[arg(long, value_enum, default_value_t = DModeArg::Mixed)]
    d_mode: DModeArg,
    /// Write the instance here instead of standard output.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// How many instances to generate; instance i uses seed + i.
    #[arg(long)]
    count: usize,
    #[arg(long, value_enum)]
    sense: SenseArg,
    #[arg(long, default_value_t = 4)]
    rows: usize,
    #[arg(long, default_value_t = 4)]
    cols: usize,
    #[arg(short = 'k', long = "sparsity", default_value_t = 2)]
    k: usize,
    /// Defaults to row for covering and col for packing.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, default_value_t = 5)]
    den_bound: u32,
    #[arg(long, value_enum, default_value_t = DModeArg::Mixed)]
    d_mode: DModeArg,
    /// Node budget for each oracle search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

enum CliError {
    /// Bad file, bad parameters, or an instance outside the algorithm's
    /// domain (exit 2).
    Input(String),
    /// A proven invariant failed (exit 3).
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

fn cover_err(e: CoverError) -> CliError {
    match e {
        CoverError::Internal(m) => CliError::Internal(m.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn pack_err(e: PackError) -> CliError {
    match e {
        PackError::Internal(_)
        | PackError::DegreeContractViolated(_)
        | PackError::StructureViolation { .. } => CliError::Internal(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn gen_err(e: GenError) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.cmd, format) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            print!("{}", report::error_doc(format, err.message()));
            ExitCode::from(err.code())
        }
    }
}

fn run(cmd: Cmd, format: Format) -> Result<u8, CliError> {
    match cmd {
        Cmd::Solve { path, algorithm, oracle, budget } => {
            cmd_solve(&path, algorithm, oracle, budget, format)
        }
        Cmd::Check { path, solution } => cmd_check(&path, &solution, format),
        Cmd::Oracle { path, budget } => cmd_oracle(&path, budget, format),
        Cmd::GenRandom(args) => cmd_gen_random(args),
        Cmd::GenGap { fixture, coefficient, out } => {
            let inst = gen_gap_fixture(fixture.into(), coefficient).map_err(gen_err)?;
            write_output(&out, &serialize_instance(&inst))
        }
        Cmd::GenHardness { formula, labels, out } => cmd_gen_hardness(&formula, labels, out),
        Cmd::CertifyHardness { formula, assignment, out } => {
            cmd_certify_hardness(&formula, &assignment, out, format)
        }
        Cmd::Campaign(args) => cmd_campaign(args, format),
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn write_output(out: &Option<PathBuf>, doc: &str) -> Result<u8, CliError> {
    match out {
        Some(path) => fs::write(path, doc)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => print!("{doc}"),
    }
    Ok(0)
}

fn load_instance(text: &str) -> Result<SparseIP, CliError> {
    let inst =
        parse_instance(text).map_err(|e| CliError::Input(format!("parse error: {e}")))?;
    let violations = validate(&inst);
    if !violations.is_empty() {
        let list =
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
        return Err(CliError::Input(format!("validation failed: {list}")));
    }
    Ok(inst)
}

fn int_ratio(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn pack_extra(rep: &PackReport) -> Vec<(&'static str, String)> {
    let mut extra = vec![
        ("k", rep.k.to_string()),
        ("chosen", rep.chosen.clone()),
        ("iterations", rep.iterations.to_string()),
    ];
    if let Some(w) = &rep.width {
        extra.push(("width", format_rational(w)));
    }
    extra.push(("fallback", rep.fallback_used.to_string()));
    let candidates = rep
        .candidates
        .iter()
        .map(|(name, v)| format!("{name}={}", format_rational(v)))
        .collect::<Vec<_>>()
        .join(" ");
    extra.push(("candidates", candidates));
    extra
}

fn run_algorithm(inst: &SparseIP, algorithm: Algorithm) -> Result<Solved, CliError> {
    match algorithm {
        Algorithm::Auto => match inst.sense {
            Sense::Cover => run_algorithm(inst, Algorithm::CoverK),
            Sense::Pack => {
                let base = if inst.col_sparsity() <= 2 {
                    run_algorithm(inst, Algorithm::Pack2cs)?
                } else {
                    run_algorithm(inst, Algorithm::PackGeneral)?
                };
                // The width guarantee can be stronger when rows are slack;
                // keep whichever value is better.
                match run_algorithm(inst, Algorithm::PackWidth) {
                    Ok(wide) if wide.value > base.value => Ok(wide),
                    Ok(_) | Err(CliError::Input(_)) => Ok(base),
                    Err(internal) => Err(internal),
                }
            }
        },
        Algorithm::CoverK => {
            if inst.sense != Sense::Cover {
                return Err(CliError::Input("cover-k needs a covering instance".into()));
            }
            let (sol, rep) = solve_cover(inst).map_err(cover_err)?;
            Ok(Solved {
                variant: "cover-k",
                x: sol.x,
                value: sol.objective,
                lp_value: rep.lp_value,
                ratio_bound: int_ratio(rep.ratio_bound),
                extra: vec![
                    ("k", rep.k.to_string()),
                    ("cuts_added", rep.cuts_added.to_string()),
                    ("rows_replaced", rep.rows_replaced.to_string()),
                ],
            })
        }
        Algorithm::PackGeneral => pack_variant(inst, "pack-general", solve_pack),
        Algorithm::Pack2cs => pack_variant(inst, "pack-2cs", solve_pack_2cs),
        Algorithm::PackWidth => pack_variant(inst, "pack-width", solve_pack_width),
    }
}

fn pack_variant(
    inst: &SparseIP,
    variant: &'static str,
    solver: fn(&SparseIP) -> Result<(sparseip::IntSolution, PackReport), PackError>,
) -> Result<Solved, CliError> {
    if inst.sense != Sense::Pack {
        return Err(CliError::Input(format!("{variant} needs a packing instance")));
    }
    let (sol, rep) = solver(inst).map_err(pack_err)?;
    Ok(Solved {
        variant,
        x: sol.x,
        value: sol.objective,
        lp_value: rep.lp_value.clone(),
        ratio_bound: rep.ratio_bound.clone(),
        extra: pack_extra(&rep),
    })
}

fn cmd_solve(
    path: &str,
    algorithm: Algorithm,
    oracle: bool,
    budget: u64,
    format: Format,
) -> Result<u8, CliError> {
    let inst = load_instance(&read_input(path)?)?;
    let start = Instant::now();
    let solved = run_algorithm(&inst, algorithm)?;
    let wall = start.elapsed();

    let oracle_field = if oracle {
        match solve_exact(&inst, budget) {
            OracleOutcome::Optimal(opt) => {
                let ratio = observed_ratio(inst.sense, &solved.value, &opt.objective);
                OracleField::Value { opt: opt.objective, ratio }
            }
            OracleOutcome::BudgetExceeded => OracleField::BudgetExceeded,
            OracleOutcome::Infeasible => {
                return Err(CliError::Internal(
                    "oracle calls the solved instance infeasible".into(),
                ))
            }
            OracleOutcome::Unbounded => {
                return Err(CliError::Internal(
                    "oracle calls the solved instance unbounded".into(),
                ))
            }
        }
    } else {
        OracleField::NotRun
    };

    let rep = RunReport {
        digest: digest_hex(&serialize_instance(&inst)),
        solved,
        oracle: oracle_field,
        wall,
    };
    print!("{}", rep.render(format));
    Ok(0)
}

fn cmd_check(path: &str, solution: &str, format: Format) -> Result<u8, CliError> {
    let inst = load_instance(&read_input(path)?)?;
    let (x, stated) = parse_solution(&read_input(solution)?)
        .map_err(|e| CliError::Input(format!("solution parse error: {e}")))?;
    let mut violations = check_solution(&inst, &x);
    if x.len() == inst.ncols {
        let actual = inst.objective(&x);
        if actual != stated {
            violations.push(SolutionViolation::ObjectiveMismatch { stated, actual });
        }
    }
    match format {
        Format::Plain => {
            if violations.is_empty() {
                print!("status: feasible\n");
            } else {
                print!("status: infeasible\n");
                for v in &violations {
                    println!("violation: {v}");
                }
            }
        }
        Format::Json => {
            let status = if violations.is_empty() { "feasible" } else { "infeasible" };
            let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            println!("{}", json!({ "status": status, "violations": list }));
        }
    }
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn cmd_oracle(path: &str, budget: u64, format: Format) -> Result<u8, CliError> {
    let inst = load_instance(&read_input(path)?)?;
    match solve_exact(&inst, budget) {
        OracleOutcome::Optimal(sol) => {
            match format {
                Format::Plain => print!("{}", serialize_solution(&sol.x, &sol.objective)),
                Format::Json => {
                    let xs: Vec<String> = sol.x.iter().map(|v| v.to_string()).collect();
                    println!(
                        "{}",
                        json!({
                            "status": "optimal",
                            "x": xs,
                            "objective": format_rational(&sol.objective),
                        })
                    );
                }
            }
            Ok(0)
        }
        OracleOutcome::Infeasible => status_doc("infeasible", format),
        OracleOutcome::Unbounded => status_doc("unbounded", format),
        OracleOutcome::BudgetExceeded => {
            Err(CliError::Input("oracle search budget exceeded".into()))
        }
    }
}

fn status_doc(status: &str, format: Format) -> Result<u8, CliError> {
    match format {
        Format::Plain => println!("status: {status}"),
        Format::Json => println!("{}", json!({ "status": status })),
    }
    Ok(0)
}

fn resolve_mode(sense: SenseArg, mode: Option<ModeArg>) -> SparsityMode {
    match mode {
        Some(ModeArg::Row) => SparsityMode::RowSparse,
        Some(ModeArg::Col) => SparsityMode::ColSparse,
        None => match sense {
            SenseArg::Cover => SparsityMode::RowSparse,
            SenseArg::Pack => SparsityMode::ColSparse,
        },
    }
}

fn cmd_gen_random(args: GenRandomArgs) -> Result<u8, CliError> {
    let spec = RandomSpec {
        seed: args.seed,
        sense: args.sense.into(),
        nrows: args.rows,
        ncols: args.cols,
        k: args.k,
        mode: resolve_mode(args.sense, args.mode),
        denominator_bound: args.den_bound,
        d_mode: args.d_mode.into(),
    };
    let inst = gen_random(&spec).map_err(gen_err)?;
    write_output(&args.out, &serialize_instance(&inst))
}

fn cmd_gen_hardness(
    formula: &str,
    labels: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<u8, CliError> {
    let f = parse_formula(&read_input(formula)?).map_err(gen_err)?;
    let gadget = gen_hardness(&f);
    if let Some(path) = labels {
        let mut table = String::new();
        for (i, label) in gadget.vertex_labels.iter().enumerate() {
            table.push_str(&format!("vertex {i}: {label}\n"));
        }
        for (j, label) in gadget.edge_labels.iter().enumerate() {
            table.push_str(&format!("edge {j}: {label}\n"));
        }
        fs::write(&path, table)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    write_output(&out, &serialize_instance(&gadget.instance))
}

fn cmd_certify_hardness(
    formula: &str,
    assignment: &str,
    out: Option<PathBuf>,
    format: Format,
) -> Result<u8, CliError> {
    let f = parse_formula(&read_input(formula)?).map_err(gen_err)?;
    let a = assignment
        .chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CliError::Input(format!("assignment character {other:?}"))),
        })
        .collect::<Result<Vec<bool>, _>>()?;
    let cert = hardness_certificate(&f, &a).map_err(gen_err)?;
    let ncols = gen_hardness(&f).instance.ncols;
    let mut x = vec![BigInt::zero(); ncols];
    for &e in &cert.edges {
        x[e] = BigInt::one();
    }
    let doc = match format {
        Format::Plain => serialize_solution(&x, &cert.cost),
        Format::Json => {
            let xs: Vec<String> = x.iter().map(|v| v.to_string()).collect();
            format!(
                "{}\n",
                json!({
                    "x": xs,
                    "objective": format_rational(&cert.cost),
                    "unsatisfied": cert.unsatisfied,
                    "edges": cert.edges,
                })
            )
        }
    };
    write_output(&out, &doc)
}

fn cmd_campaign(args: CampaignArgs, format: Format) -> Result<u8, CliError> {
    let mode = resolve_mode(args.sense, args.mode);
    let mut worst: Option<Rational> = None;
    let mut worst_infinite = false;
    let mut violations = 0usize;

    if format == Format::Plain {
        println!("# idx digest variant objective oracle ratio bound status wall_ms");
    }
    for idx in 0..args.count {
        let spec = RandomSpec {
            seed: args.seed.wrapping_add(idx as u64),
            sense: args.sense.into(),
            nrows: args.rows,
            ncols: args.cols,
            k: args.k,
            mode,
            denominator_bound: args.den_bound,
            d_mode: args.d_mode.into(),
        };
        let inst = gen_random(&spec).map_err(gen_err)?;
        let digest = digest_hex(&serialize_instance(&inst));
        let start = Instant::now();
        let solved = run_algorithm(&inst, Algorithm::Auto)?;
        let wall = start.elapsed().as_secs_f64() * 1e3;

        let (oracle_s, ratio_s, status) = match solve_exact(&inst, args.budget) {
            OracleOutcome::Optimal(opt) => {
                let ratio = observed_ratio(inst.sense, &solved.value, &opt.objective);
                let ok = matches!(&ratio, Some(r) if r <= &solved.ratio_bound);
                if !ok {
                    violations += 1;
                }
                match &ratio {
                    Some(r) => {
                        if worst.as_ref().map_or(true, |w| r > w) {
                            worst = Some(r.clone());
                        }
                    }
                    None => worst_infinite = true,
                }
                (
                    format_rational(&opt.objective),
                    ratio.as_ref().map_or("inf".to_string(), format_rational),
                    if ok { "ok" } else { "violated" },
                )
            }
            OracleOutcome::BudgetExceeded => ("-".to_string(), "-".to_string(), "budget"),
            OracleOutcome::Infeasible | OracleOutcome::Unbounded => {
                return Err(CliError::Internal(format!(
                    "generated instance {idx} was not solvable exactly"
                )))
            }
        };

        match format {
            Format::Plain => println!(
                "{idx} {} {} {} {oracle_s} {ratio_s} {} {status} {wall:.3}",
                &digest[..12],
                solved.variant,
                format_rational(&solved.value),
                format_rational(&solved.ratio_bound),
            ),
            Format::Json => println!(
                "{}",
                json!({
                    "idx": idx,
                    "digest": digest,
                    "variant": solved.variant,
                    "objective": format_rational(&solved.value),
                    "oracle": oracle_s,
                    "ratio": ratio_s,
                    "bound": format_rational(&solved.ratio_bound),
                    "status": status,
                    "wall_ms": wall,
                })
            ),
        }
    }

    let worst_s = if worst_infinite {
        "inf".to_string()
    } else {
        worst.as_ref().map_or("-".to_string(), format_rational)
    };
    match format {
        Format::Plain => {
            println!("worst_ratio: {worst_s}");
            println!("violations: {violations}");
        }
        Format::Json => println!(
            "{}",
            json!({ "count": args.count, "worst_ratio": worst_s, "violations": violations })
        ),
    }
    Ok(if violations > 0 { 1 } else { 0 })
}
