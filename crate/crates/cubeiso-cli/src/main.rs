//! Command-line workbench for edge isoperimetry on hypercube distance
//! powers: exact counts, named constructions, compression to normal form,
//! closed-form bounds, small exact solves, verification suites, and
//! tightness sweeps.
//!
//! Exit codes: 0 on success, 1 when a verification suite finds a violation,
//! 2 on invalid input, an unmet hypothesis, or an exceeded resource budget.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cubeiso::bounds::{
    distance_two_bound, even_power_bound, kkl_exact, kleitman_threshold, kleitman_west_bound,
    odd_power_bound, trivial_bound, weight_edge_bound, BoundReport,
};
use cubeiso::compress::normalize;
use cubeiso::construct::{hamming_ball, initial_segment, kw_layer, kw_star, odd_tight, subcube};
use cubeiso::solver::{solve_compressed, solve_exhaustive, SolveResult, SolverBudget};
use cubeiso::suites::{run_all, run_suite, SuiteReport};
use cubeiso::table::{tightness_rows, TightnessRow};
use cubeiso::vertex::{edge_boundary, edge_decomposition, edges_within};
use cubeiso::{Error, Result, VertexFamily};

#[derive(Parser)]
#[command(
    name = "cubeiso",
    version,
    about = "Edge isoperimetry workbench for hypercube powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Worker threads for parallel search (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized verification corpora
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Include wall-clock timings; off keeps repeated runs byte-identical
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    InitialSegment,
    Subcube,
    HammingBall,
    OddTight,
    KwLayer,
    KwStar,
}

/// Where the family comes from: a JSON file or a named construction.
#[derive(Args)]
struct FamilySource {
    /// Path to a family file: {"n": 4, "vertices": ["0110", ...]}
    #[arg(
        long,
        required_unless_present = "construct",
        conflicts_with = "construct"
    )]
    family: Option<PathBuf>,
    /// Build a named family instead of reading one
    #[arg(long, value_enum, required_unless_present = "family")]
    construct: Option<Kind>,
    /// Cube dimension for --construct
    #[arg(long)]
    n: Option<u32>,
    /// Size for initial-segment
    #[arg(long)]
    m: Option<u64>,
    /// Subcube dimension for subcube
    #[arg(long)]
    d: Option<u32>,
    /// Radius or layer weight for hamming-ball, odd-tight, kw-layer, kw-star
    #[arg(long)]
    k: Option<u32>,
    /// Common-core size for kw-star
    #[arg(long, default_value_t = 0)]
    s: u32,
}

impl FamilySource {
    fn resolve(&self) -> Result<VertexFamily> {
        if let Some(path) = &self.family {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::invalid(format!("reading {}: {e}", path.display())))?;
            return VertexFamily::from_json(&text);
        }
        let kind = self
            .construct
            .expect("clap requires --construct without --family");
        let n = self
            .n
            .ok_or_else(|| Error::invalid("--construct needs --n".to_string()))?;
        let need = |name: &str, v: Option<u32>| {
            v.ok_or_else(|| Error::invalid(format!("this construction needs --{name}")))
        };
        match kind {
            Kind::InitialSegment => {
                let m = self
                    .m
                    .ok_or_else(|| Error::invalid("initial-segment needs --m".to_string()))?;
                initial_segment(n, m)
            }
            Kind::Subcube => subcube(n, need("d", self.d)?),
            Kind::HammingBall => hamming_ball(n, need("k", self.k)?),
            Kind::OddTight => odd_tight(n, need("k", self.k)?),
            Kind::KwLayer => kw_layer(n, need("k", self.k)?),
            Kind::KwStar => kw_star(n, need("k", self.k)?, self.s),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Theorem {
    DistanceTwo,
    EvenPower,
    OddPower,
    KleitmanWest,
    Trivial,
    Kkl,
    KleitmanThreshold,
    Weight,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exhaustive,
    Compressed,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableTheorem {
    DistanceTwo,
    EvenPower,
    OddPower,
}

impl TableTheorem {
    fn name(self) -> &'static str {
        match self {
            TableTheorem::DistanceTwo => "distance-two",
            TableTheorem::EvenPower => "even-power",
            TableTheorem::OddPower => "odd-power",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count the induced edges of the family at distances 1..=r
    Edges {
        #[command(flatten)]
        src: FamilySource,
        /// Largest Hamming distance treated as adjacent
        #[arg(long)]
        r: u32,
    },
    /// Count the edge boundary of the family at distances 1..=r
    Boundary {
        #[command(flatten)]
        src: FamilySource,
        /// Largest Hamming distance treated as adjacent
        #[arg(long)]
        r: u32,
    },
    /// Split the induced pairs by private-element class (b, a)
    Decompose {
        #[command(flatten)]
        src: FamilySource,
        /// Largest pair distance to include
        #[arg(long)]
        rmax: u32,
    },
    /// Print a family in the interchange JSON shape
    Construct {
        #[command(flatten)]
        src: FamilySource,
    },
    /// Compress the family to its left-compressed down-set normal form
    Normalize {
        #[command(flatten)]
        src: FamilySource,
        /// Distance used when reporting edge counts along the trace
        #[arg(long)]
        r: u32,
        /// Write the compression steps as JSON lines to this file
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Evaluate a closed-form bound or exact formula
    Bound {
        /// Which bound or formula to evaluate
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Cube dimension
        #[arg(long)]
        n: Option<u32>,
        /// Family size (which bounds need it varies by theorem)
        #[arg(long)]
        m: Option<u128>,
        /// Half-distance parameter for the even/odd power bounds
        #[arg(long)]
        t: Option<u32>,
        /// Distance for the trivial, kkl, and kleitman-threshold formulas
        #[arg(long)]
        r: Option<u32>,
    },
    /// Exact maximum induced edges over all size-m subfamilies
    Solve {
        /// Cube dimension
        #[arg(long)]
        n: u32,
        /// Family size
        #[arg(long)]
        m: u64,
        /// Largest Hamming distance treated as adjacent
        #[arg(long)]
        r: u32,
        /// Search strategy
        #[arg(long, value_enum, default_value_t = BackendArg::Compressed)]
        backend: BackendArg,
        /// Also print each witness family (plain format)
        #[arg(long)]
        witnesses: bool,
    },
    /// Run one verification suite, or all of them
    Verify {
        /// Suite name, or "all" (see the library's suites module for the list)
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Tightness sweep over Hamming-ball radii, as plot-ready rows
    Table {
        /// Which bound the sweep compares against
        #[arg(long, value_enum)]
        theorem: TableTheorem,
        /// Cube dimension
        #[arg(long)]
        n: u32,
        /// Distance the achieved edge counts use
        #[arg(long)]
        r: u32,
        /// Largest ball radius to try
        #[arg(long, default_value_t = 8)]
        k_cap: u32,
        /// Skip balls with more members than this
        #[arg(long, default_value_t = 65536)]
        size_cap: u64,
    },
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("report serialization cannot fail")
    );
}

fn need<T>(name: &str, v: Option<T>) -> Result<T> {
    v.ok_or_else(|| Error::invalid(format!("this theorem needs --{name}")))
}

fn run_bound(
    theorem: Theorem,
    n: Option<u32>,
    m: Option<u128>,
    t: Option<u32>,
    r: Option<u32>,
    format: Format,
) -> Result<()> {
    let exact =
        |name: &str, n: Option<u32>, r: Option<u32>, m: Option<u128>, value: u128| match format {
            Format::Plain => println!("{value}"),
            Format::Json => print_json(&json!({
                "theorem": name, "n": n, "r": r, "m": m, "value": value,
            })),
            Format::Csv => {
                println!("theorem,n,r,m,value");
                let opt = |v: Option<u128>| v.map(|x| x.to_string()).unwrap_or_default();
                println!(
                    "{name},{},{},{},{value}",
                    opt(n.map(u128::from)),
                    opt(r.map(u128::from)),
                    opt(m)
                );
            }
        };
    let report = |report: BoundReport| match format {
        Format::Plain => println!("{}", report.bound),
        Format::Json => print_json(&report),
        Format::Csv => {
            println!("{}", BoundReport::CSV_HEADER);
            println!("{}", report.csv_row());
        }
    };
    match theorem {
        Theorem::DistanceTwo => report(distance_two_bound(need("m", m)?, need("n", n)?)?),
        Theorem::EvenPower => report(even_power_bound(
            need("m", m)?,
            need("n", n)?,
            need("t", t)?,
        )?),
        Theorem::OddPower => report(odd_power_bound(
            need("m", m)?,
            need("n", n)?,
            need("t", t)?,
        )?),
        Theorem::KleitmanWest => report(kleitman_west_bound(need("m", m)?, need("n", n)?)?),
        Theorem::Trivial => {
            let (m, n, r) = (need("m", m)?, need("n", n)?, need("r", r)?);
            let value = trivial_bound(m, n, r)?;
            match format {
                Format::Plain => println!("{value}"),
                Format::Json => print_json(&json!({
                    "theorem": "trivial", "n": n, "r": r, "m": m, "value": value,
                })),
                Format::Csv => {
                    println!("theorem,n,r,m,value");
                    println!("trivial,{n},{r},{m},{value}");
                }
            }
        }
        Theorem::Kkl => {
            let (n, r) = (need("n", n)?, need("r", r)?);
            exact("kkl", Some(n), Some(r), None, kkl_exact(n, r)?);
        }
        Theorem::KleitmanThreshold => {
            let (n, r) = (need("n", n)?, need("r", r)?);
            exact(
                "kleitman-threshold",
                Some(n),
                Some(r),
                None,
                kleitman_threshold(n, r)?,
            );
        }
        Theorem::Weight => {
            let m = need("m", m)?;
            exact("weight", None, None, Some(m), weight_edge_bound(m)?);
        }
    }
    Ok(())
}

fn run_verify(suite: &str, seed: u64, budget: &SolverBudget, format: Format) -> Result<u8> {
    let reports: Vec<SuiteReport> = if suite == "all" {
        run_all(seed, budget)?
    } else {
        vec![run_suite(suite, seed, budget)?]
    };
    match format {
        Format::Plain => {
            for report in &reports {
                println!(
                    "{}: {} (checks {}, violations {}){}",
                    report.suite,
                    if report.pass { "pass" } else { "FAIL" },
                    report.checks,
                    report.violations,
                    if report.pass {
                        String::new()
                    } else {
                        format!(" -- {}", report.notes)
                    }
                );
            }
        }
        Format::Json => print_json(&reports),
        Format::Csv => {
            println!("suite,checks,violations,pass,seed");
            for report in &reports {
                println!(
                    "{},{},{},{},{}",
                    report.suite,
                    report.checks,
                    report.violations,
                    report.pass,
                    report.seed.map(|s| s.to_string()).unwrap_or_default()
                );
            }
        }
    }
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    let budget = SolverBudget::from_env();
    match cli.command {
        Command::Edges { src, r } => {
            let fam = src.resolve()?;
            let edges = edges_within(&fam, r)?;
            match cli.format {
                Format::Plain => println!("{edges}"),
                Format::Json => print_json(&json!({
                    "n": fam.dim(), "r": r, "m": fam.len(), "edges": edges,
                })),
                Format::Csv => {
                    println!("n,r,m,edges");
                    println!("{},{r},{},{edges}", fam.dim(), fam.len());
                }
            }
        }
        Command::Boundary { src, r } => {
            let fam = src.resolve()?;
            let boundary = edge_boundary(&fam, r)?;
            match cli.format {
                Format::Plain => println!("{boundary}"),
                Format::Json => print_json(&json!({
                    "n": fam.dim(), "r": r, "m": fam.len(), "boundary": boundary,
                })),
                Format::Csv => {
                    println!("n,r,m,boundary");
                    println!("{},{r},{},{boundary}", fam.dim(), fam.len());
                }
            }
        }
        Command::Decompose { src, rmax } => {
            let fam = src.resolve()?;
            let decomposition = edge_decomposition(&fam, rmax)?;
            match cli.format {
                Format::Plain => {
                    for (class, count) in &decomposition.counts {
                        println!("{} {} {count}", class.b, class.a);
                    }
                }
                Format::Json => print_json(&decomposition),
                Format::Csv => {
                    println!("b,a,count");
                    for (class, count) in &decomposition.counts {
                        println!("{},{},{count}", class.b, class.a);
                    }
                }
            }
        }
        Command::Construct { src } => {
            let fam = src.resolve()?;
            match cli.format {
                Format::Plain | Format::Json => println!("{}", fam.to_json()),
                Format::Csv => {
                    println!("vertex");
                    for v in fam.iter() {
                        println!("{}", v.bit_string());
                    }
                }
            }
        }
        Command::Normalize { src, r, trace } => {
            let fam = src.resolve()?;
            let (normal, steps) = normalize(&fam, r)?;
            if let Some(path) = trace {
                let mut text = steps.to_jsonl();
                if !text.is_empty() {
                    text.push('\n');
                }
                std::fs::write(&path, text)
                    .map_err(|e| Error::invalid(format!("writing {}: {e}", path.display())))?;
            }
            match cli.format {
                Format::Plain | Format::Json => println!("{}", normal.to_json()),
                Format::Csv => {
                    println!("vertex");
                    for v in normal.iter() {
                        println!("{}", v.bit_string());
                    }
                }
            }
        }
        Command::Bound {
            theorem,
            n,
            m,
            t,
            r,
        } => {
            run_bound(theorem, n, m, t, r, cli.format)?;
        }
        Command::Solve {
            n,
            m,
            r,
            backend,
            witnesses,
        } => {
            let mut result: SolveResult = match backend {
                BackendArg::Exhaustive => solve_exhaustive(n, m, r, &budget)?,
                BackendArg::Compressed => solve_compressed(n, m, r, &budget)?,
            };
            if !cli.timings {
                result.wall_time_ms = None;
            }
            match cli.format {
                Format::Plain => {
                    println!("value {}", result.value);
                    println!("witnesses {}", result.witnesses.len());
                    if let Some(ms) = result.wall_time_ms {
                        println!("wall_time_ms {ms}");
                    }
                    if witnesses {
                        for w in &result.witnesses {
                            println!("{}", w.to_json());
                        }
                    }
                }
                Format::Json => print_json(&result),
                Format::Csv => {
                    println!("n,m,r,value,witnesses,backend,witness_complete");
                    println!(
                        "{n},{m},{r},{},{},{},{}",
                        result.value,
                        result.witnesses.len(),
                        match backend {
                            BackendArg::Exhaustive => "exhaustive",
                            BackendArg::Compressed => "compressed",
                        },
                        result.witness_complete
                    );
                }
            }
        }
        Command::Verify { suite } => {
            return run_verify(&suite, cli.seed, &budget, cli.format);
        }
        Command::Table {
            theorem,
            n,
            r,
            k_cap,
            size_cap,
        } => {
            let rows = tightness_rows(theorem.name(), n, r, k_cap, size_cap)?;
            match cli.format {
                Format::Plain | Format::Csv => {
                    println!("{}", TightnessRow::CSV_HEADER);
                    for row in &rows {
                        println!("{}", row.csv_row());
                    }
                }
                Format::Json => print_json(&rows),
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`cubeiso table ... | head`) like other
    // line-oriented tools, instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: setting up {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
