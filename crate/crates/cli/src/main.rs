//! `streclcs`: longest common subsequence excluding a forbidden substring.
//!
//! Exit codes: 0 success, 2 invalid input, 3 verification mismatch or failed
//! check, 4 oracle budget exceeded.

mod input;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use streclcs::codec::is_subsequence;
use streclcs::harness::{self, BenchFamily, EditBudget, FuzzConfig, Generator, HarnessError};
use streclcs::oracles::{brute_force, nakatsu_lcs, wang_dp, WANG_DEFAULT_BUDGET};
use streclcs::{solve, Error, ProblemInstance, Symbol};

#[derive(Parser)]
#[command(name = "streclcs", version, about = "Longest common subsequence that excludes a forbidden substring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Differential fuzzing against the reference solvers.
    Fuzz(FuzzArgs),
    /// Work counters over a generated size sweep.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Fast,
    Wang,
    Brute,
    /// Plain LCS, ignoring the pattern.
    Lcs,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Fast => "fast",
            Algorithm::Wang => "wang",
            Algorithm::Brute => "brute",
            Algorithm::Lcs => "lcs",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Length,
    Witness,
    Json,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["a", "text", "fasta"])))]
struct SolveArgs {
    /// First string, inline.
    #[arg(short = 'a', long = "a", value_name = "A", requires = "b")]
    a: Option<String>,
    /// Second string, inline.
    #[arg(short = 'b', long = "b", value_name = "B", requires = "a")]
    b: Option<String>,
    /// Read A and B from text files (one trailing newline is dropped).
    #[arg(long, num_args = 2, value_names = ["FILE_A", "FILE_B"])]
    text: Option<Vec<PathBuf>>,
    /// Read A and B from the first record of two FASTA files.
    #[arg(long, num_args = 2, value_names = ["FILE_A", "FILE_B"])]
    fasta: Option<Vec<PathBuf>>,
    /// The substring the answer must not contain.
    #[arg(short = 'p', long, allow_hyphen_values = true)]
    pattern: String,
    #[arg(long, value_enum, default_value_t = Algorithm::Fast)]
    algorithm: Algorithm,
    #[arg(short = 'o', long, value_enum, default_value_t = OutputMode::Length)]
    output: OutputMode,
    /// Shorthand for `--output witness`.
    #[arg(long, conflicts_with_all = ["output", "json"])]
    witness: bool,
    /// Shorthand for `--output json`.
    #[arg(long, conflicts_with = "output")]
    json: bool,
    /// Cross-check with a second algorithm and validate the witness.
    #[arg(long)]
    verify: bool,
    /// Print work counters to stderr.
    #[arg(long)]
    stats: bool,
    /// Table-size budget for the cubic solver.
    #[arg(long, default_value_t = WANG_DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 10_000)]
    count: usize,
    #[arg(long, default_value_t = 12)]
    max_m: usize,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, default_value_t = 4)]
    max_r: usize,
    #[arg(long, default_value_t = 3)]
    alphabet: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Skip the brute-force comparison (lifts the size guard).
    #[arg(long)]
    no_brute: bool,
    #[arg(long, default_value_t = WANG_DEFAULT_BUDGET)]
    budget: u128,
    /// Print the raw strings of one instance and exit.
    #[arg(long, value_name = "INDEX")]
    replay: Option<usize>,
    /// Emit one JSON line per instance.
    #[arg(long)]
    records: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    HighSimilarity,
    LowSimilarity,
    Random,
    AdversarialPattern,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Family::HighSimilarity)]
    family: Family,
    /// Comma-separated string lengths.
    #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 2048, 4096, 8192, 16384])]
    sizes: Vec<usize>,
    #[arg(short = 'r', long, default_value_t = 4)]
    r: usize,
    /// Defaults to 20 for high-similarity and 4 otherwise.
    #[arg(long)]
    alphabet: Option<usize>,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// High-similarity: fixed number of edits.
    #[arg(long, default_value_t = 16)]
    edits: usize,
    /// High-similarity: edits as a fraction of n (overrides --edits).
    #[arg(long)]
    edit_fraction: Option<f64>,
    /// Low-similarity: forced cross insertions per string.
    #[arg(long, default_value_t = 4)]
    overlap: usize,
    /// Adversarial-pattern: separators per string.
    #[arg(long, default_value_t = 8)]
    separators: usize,
    /// Run the cubic solver where its table fits; 0 disables it.
    #[arg(long, default_value_t = WANG_DEFAULT_BUDGET)]
    wang_budget: u128,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Mismatch(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Mismatch(_) => 3,
            Failure::Budget(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) => write!(f, "invalid input: {m}"),
            Failure::Mismatch(m) => write!(f, "verification failed: {m}"),
            Failure::Budget(m) => write!(f, "budget exceeded: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InstanceTooLarge { .. } | Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::EmptyPattern | Error::InputTooLong { .. } | Error::Config(_) => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Config(e) => e.into(),
            HarnessError::Counterexample(_) => Failure::Mismatch(e.to_string()),
            HarnessError::Generation(_) => Failure::Invalid(e.to_string()),
        }
    }
}

struct Outcome {
    length: usize,
    witness: Vec<Symbol>,
    cells: u64,
    diagonals: Option<usize>,
}

fn run_algorithm(algorithm: Algorithm, inst: &ProblemInstance, budget: u128, witness: bool) -> Result<Outcome, Failure> {
    Ok(match algorithm {
        Algorithm::Fast => {
            let res = solve(inst, witness);
            Outcome {
                length: res.length,
                witness: res.witness.unwrap_or_default(),
                cells: res.stats.cells_computed,
                diagonals: Some(res.stats.diagonals_opened),
            }
        }
        Algorithm::Wang => {
            let sol = wang_dp(inst, budget)?;
            Outcome { length: sol.length, witness: sol.witness, cells: sol.work, diagonals: None }
        }
        Algorithm::Brute => {
            let sol = brute_force(inst)?;
            Outcome { length: sol.length, witness: sol.witness, cells: sol.work, diagonals: None }
        }
        Algorithm::Lcs => {
            let sol = nakatsu_lcs(&inst.a, &inst.b);
            Outcome { length: sol.length, witness: sol.witness, cells: sol.work, diagonals: None }
        }
    })
}

fn verify(args: &SolveArgs, inst: &ProblemInstance, out: &Outcome) -> Result<(), Failure> {
    if out.witness.len() != out.length {
        return Err(Failure::Mismatch(format!(
            "witness has length {} but the reported length is {}",
            out.witness.len(),
            out.length
        )));
    }
    if args.algorithm == Algorithm::Lcs {
        if !(is_subsequence(&out.witness, &inst.a) && is_subsequence(&out.witness, &inst.b)) {
            return Err(Failure::Mismatch("LCS witness is not a common subsequence".into()));
        }
        let fast = run_algorithm(Algorithm::Fast, inst, args.budget, false)?;
        let reduces = inst.r() > inst.m();
        if out.length < fast.length || (reduces && out.length != fast.length) {
            return Err(Failure::Mismatch(format!("lcs {} vs fast {}", out.length, fast.length)));
        }
        return Ok(());
    }

    if !inst.validate_witness(&out.witness) {
        return Err(Failure::Mismatch(format!("witness {:?} is invalid", inst.decode(&out.witness))));
    }
    let second = if args.algorithm == Algorithm::Fast { Algorithm::Wang } else { Algorithm::Fast };
    let other = run_algorithm(second, inst, args.budget, false)?;
    if other.length != out.length {
        return Err(Failure::Mismatch(format!(
            "{} {} vs {} {}",
            args.algorithm.name(),
            out.length,
            second.name(),
            other.length
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveJson<'a> {
    length: usize,
    witness: Option<String>,
    algorithm: &'a str,
    cells_computed: u64,
    time_ms: f64,
    swapped: bool,
}

fn read_inputs(args: &SolveArgs) -> Result<(String, String), Failure> {
    let invalid = |e: anyhow::Error| Failure::Invalid(format!("{e:#}"));
    if let (Some(a), Some(b)) = (&args.a, &args.b) {
        return Ok((a.clone(), b.clone()));
    }
    if let Some(files) = &args.text {
        return Ok((input::read_text(&files[0]).map_err(invalid)?, input::read_text(&files[1]).map_err(invalid)?));
    }
    if let Some(files) = &args.fasta {
        return Ok((input::read_fasta(&files[0]).map_err(invalid)?, input::read_fasta(&files[1]).map_err(invalid)?));
    }
    unreachable!("clap requires one input source")
}

fn run_solve(args: SolveArgs) -> Result<(), Failure> {
    let mode = if args.witness {
        OutputMode::Witness
    } else if args.json {
        OutputMode::Json
    } else {
        args.output
    };
    let (a, b) = read_inputs(&args)?;
    let inst = ProblemInstance::new(&a, &b, &args.pattern)?;

    let start = Instant::now();
    let out = run_algorithm(args.algorithm, &inst, args.budget, mode != OutputMode::Length || args.verify)?;
    let time_ms = start.elapsed().as_secs_f64() * 1e3;

    if args.verify {
        verify(&args, &inst, &out)?;
    }
    if args.stats {
        eprintln!("m: {}  n: {}  r: {}  sigma: {}  swapped: {}", inst.m(), inst.n(), inst.r(), inst.sigma_size, inst.swapped);
        eprintln!("cells_computed: {}", out.cells);
        if let Some(d) = out.diagonals {
            eprintln!("diagonals_opened: {d}");
        }
        eprintln!("time_ms: {time_ms:.3}");
    }

    match mode {
        OutputMode::Length => println!("{}", out.length),
        OutputMode::Witness => {
            println!("{}", out.length);
            println!("{}", inst.decode(&out.witness));
        }
        OutputMode::Json => {
            let json = SolveJson {
                length: out.length,
                witness: Some(inst.decode(&out.witness)),
                algorithm: args.algorithm.name(),
                cells_computed: out.cells,
                time_ms,
                swapped: inst.swapped,
            };
            println!("{}", serde_json::to_string(&json).expect("serializable"));
        }
    }
    Ok(())
}

fn run_fuzz(args: FuzzArgs) -> Result<(), Failure> {
    let config = FuzzConfig {
        instance_count: args.count,
        max_m: args.max_m,
        max_n: args.max_n,
        max_r: args.max_r,
        alphabet_size: args.alphabet,
        seed: args.seed,
        brute: !args.no_brute,
        wang_budget: args.budget,
    };
    config.validate()?;

    if let Some(index) = args.replay {
        let raw = harness::replay(&config, index);
        println!("{}", serde_json::to_string(&raw).expect("serializable"));
        return Ok(());
    }

    let mut report = harness::fuzz(&config)?;
    if args.records {
        for rec in &report.records {
            println!("{}", serde_json::to_string(rec).expect("serializable"));
        }
    }
    report.records.clear();
    if args.json {
        println!("{}", serde_json::to_string(&report).expect("serializable"));
    } else {
        println!("instances        {}", report.instances);
        println!("brute_checked    {}", report.brute_checked);
        println!("wang_checked     {}", report.wang_checked);
        println!("max_length       {}", report.max_length);
        println!("total_cells      {}", report.total_cells);
        println!("max_bound_ratio  {:.4}", report.max_bound_ratio);
        println!("result           ok");
    }
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<(), Failure> {
    let generator = match args.family {
        Family::HighSimilarity => Generator::HighSimilarity {
            edits: match args.edit_fraction {
                Some(f) => EditBudget::Fraction(f),
                None => EditBudget::Fixed(args.edits),
            },
        },
        Family::LowSimilarity => Generator::LowSimilarity { overlap: args.overlap },
        Family::Random => Generator::Random,
        Family::AdversarialPattern => Generator::AdversarialPattern { separators: args.separators },
    };
    let default_alphabet = if args.family == Family::HighSimilarity { 20 } else { 4 };
    let family = BenchFamily {
        generator,
        sizes: args.sizes,
        r: args.r,
        alphabet_size: args.alphabet.unwrap_or(default_alphabet),
        repetitions: args.reps,
        seed: args.seed,
        wang_budget: args.wang_budget,
    };
    let report = harness::bench(&family)?;

    if args.json {
        println!("{}", serde_json::to_string(&report).expect("serializable"));
    } else {
        println!("family\tsize\trep\tm\tn\tr\tlength\tcells\tbound\twang_table\twang_length\tfast_ms\twang_ms");
        for row in &report.rows {
            let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            println!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\t{}",
                report.family,
                row.size,
                row.repetition,
                row.m,
                row.n,
                row.r,
                row.length,
                row.cells_computed,
                row.cell_bound,
                row.wang_table_size,
                opt(row.wang_length.map(|v| v.to_string())),
                row.fast_ms,
                opt(row.wang_ms.map(|v| format!("{v:.3}"))),
            );
        }
        let fmt_slope = |s: Option<f64>| s.map_or("-".to_string(), |s| format!("{s:.3}"));
        println!("cells_slope\t{}", fmt_slope(report.cells_slope));
        println!("wang_slope\t{}", fmt_slope(report.wang_slope));
        match report.linear_check {
            Some(ok) => println!("linear_check\t{}", if ok { "pass" } else { "FAIL" }),
            None => println!("linear_check\t-"),
        }
    }
    if report.linear_check == Some(false) {
        return Err(Failure::Mismatch(format!(
            "cells_computed slope {} is not below {}",
            report.cells_slope.unwrap_or(f64::NAN),
            harness::LINEAR_SLOPE_LIMIT
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Fuzz(args) => run_fuzz(args),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
