//! `pixtopo` command line.
//!
//! Exit codes: 0 success, 1 an identity failed (a correctness alarm),
//! 2 unreadable or malformed input, 3 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use pixtopo::curves::curve_report;
use pixtopo::generate::{generate_curve, generate_random, CurveKind};
use pixtopo::grid::{Adjacency, DigitalObject};
use pixtopo::invariants::analyze;
use pixtopo::io::{emit_ascii_grid, emit_pbm_raw, parse_bytes, InputFormat};
use pixtopo::report::{curve_text, emit_report, ReportDocument, ReportFormat};
use pixtopo::verify::{
    verify_exhaustive, verify_random, RandomPlan, VerifySummary, DEFAULT_DENSITIES,
    MAX_EXHAUSTIVE_CELLS,
};

const EXIT_OK: u8 = 0;
const EXIT_INCONSISTENT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "pixtopo",
    version,
    about = "Tunnel, hole and component counts of binary images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report p, v, c, h, b, t for each input and check t = v - 2(p + c - h) + b.
    Analyze(AnalyzeArgs),
    /// Check the identity exhaustively and on random objects, directly and incrementally.
    Verify(VerifyArgs),
    /// Curve predicates and identities for one input.
    Classify(ClassifyArgs),
    /// Write a random object or curve fixture.
    Gen(GenArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Ascii,
    Pbm,
    Auto,
}

impl From<FormatArg> for InputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Ascii => InputFormat::Ascii,
            FormatArg::Pbm => InputFormat::Pbm,
            FormatArg::Auto => InputFormat::Auto,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    Closed,
    Arc,
    General,
}

impl From<KindArg> for CurveKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Closed => CurveKind::Closed,
            KindArg::Arc => CurveKind::Arc,
            KindArg::General => CurveKind::General,
        }
    }
}

fn parse_adjacency(s: &str) -> Result<Adjacency, String> {
    s.parse::<u8>()
        .ok()
        .and_then(Adjacency::from_level)
        .ok_or_else(|| format!("adjacency must be 0 or 1, got {s:?}"))
}

#[derive(Debug, Clone, Copy)]
struct Dims {
    width: u32,
    height: u32,
}

impl FromStr for Dims {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (w, h) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
        let parse = |v: &str| {
            v.parse::<u32>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| format!("bad dimension {v:?} in {s:?}"))
        };
        Ok(Dims {
            width: parse(w)?,
            height: parse(h)?,
        })
    }
}

fn parse_density(s: &str) -> Result<f64, String> {
    s.parse::<f64>()
        .ok()
        .filter(|d| (0.0..=1.0).contains(d))
        .ok_or_else(|| format!("density must be in [0, 1], got {s:?}"))
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    /// One JSON document per input, one per line.
    #[arg(long)]
    json: bool,
    /// Also evaluate the curve predicates for this adjacency.
    #[arg(long, value_parser = parse_adjacency)]
    curve: Option<Adjacency>,
    /// Echo each parsed object as an ASCII grid.
    #[arg(long)]
    emit_grid: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest random grid; each run draws its size up to this.
    #[arg(long, default_value = "20x20")]
    grid: Dims,
    /// Single density; by default runs cycle through 0.1, 0.3, 0.5, 0.7, 0.9.
    #[arg(long, value_parser = parse_density)]
    density: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    runs: u64,
    /// Also enumerate every subset of a WxH grid.
    #[arg(long)]
    exhaustive: Option<Dims>,
    /// Compare tracker and direct counts after every insertion.
    #[arg(long)]
    every_step: bool,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    file: PathBuf,
    #[arg(long, value_parser = parse_adjacency)]
    adjacency: Adjacency,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value_t = 20, conflicts_with = "curve")]
    width: u32,
    #[arg(long, default_value_t = 20, conflicts_with = "curve")]
    height: u32,
    #[arg(long, default_value_t = 0.5, value_parser = parse_density, conflicts_with = "curve")]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generate a curve fixture instead of a random field.
    #[arg(long, value_enum, requires = "adjacency")]
    curve: Option<KindArg>,
    #[arg(long, value_parser = parse_adjacency)]
    adjacency: Option<Adjacency>,
    /// Pixels for arcs and general curves, enclosed pixels for closed curves.
    #[arg(long, default_value_t = 1)]
    steps: usize,
    /// Output file; `.pbm` writes raw PBM, anything else an ASCII grid.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let code = match cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Verify(args) => run_verify(args),
        Command::Classify(args) => run_classify(args),
        Command::Gen(args) => run_gen(args),
    };
    ExitCode::from(code)
}

fn load(path: &Path, format: InputFormat) -> Result<DigitalObject, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_bytes(&bytes, format).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_analyze(args: AnalyzeArgs) -> u8 {
    let format = InputFormat::from(args.format);
    let results: Vec<Result<(ReportDocument, DigitalObject), String>> = args
        .files
        .par_iter()
        .map(|path| {
            let obj = load(path, format)?;
            let mut doc = ReportDocument::new(path.display().to_string(), analyze(&obj));
            if let Some(adjacency) = args.curve {
                doc = doc.with_curve(curve_report(&obj, adjacency));
            }
            Ok((doc, obj))
        })
        .collect();

    let report_format = if args.json {
        ReportFormat::Json
    } else {
        ReportFormat::Text
    };
    let (mut bad_input, mut alarm) = (false, false);
    for result in results {
        match result {
            Ok((doc, obj)) => {
                if args.emit_grid {
                    print!("{}", emit_ascii_grid(&obj));
                }
                println!("{}", emit_report(&doc, report_format).trim_end());
                alarm |= !doc.ok();
            }
            Err(e) => {
                eprintln!("error: {e}");
                bad_input = true;
            }
        }
    }
    if alarm {
        EXIT_INCONSISTENT
    } else if bad_input {
        EXIT_INPUT
    } else {
        EXIT_OK
    }
}

fn print_summary(label: &str, s: &VerifySummary) {
    println!(
        "{label}: {} objects, {} inconsistent, {} zero-tunnel violations; {} sequences, {} insertions, {} incremental mismatches",
        s.objects,
        s.inconsistent,
        s.zero_tunnel_violations,
        s.sequences,
        s.insertions,
        s.incremental_mismatches.len()
    );
    for m in s.incremental_mismatches.iter().take(5) {
        println!("  mismatch {m}");
    }
    for ex in &s.examples {
        println!("  inconsistent object {ex:?}");
    }
}

fn run_verify(args: VerifyArgs) -> u8 {
    let mut total = VerifySummary::default();
    if let Some(Dims { width, height }) = args.exhaustive {
        if width * height > MAX_EXHAUSTIVE_CELLS {
            eprintln!("error: --exhaustive grid has more than {MAX_EXHAUSTIVE_CELLS} cells");
            return EXIT_USAGE;
        }
        let s = verify_exhaustive(width, height);
        print_summary(&format!("exhaustive {width}x{height}"), &s);
        total.merge(s);
    }
    if args.runs > 0 {
        let plan = RandomPlan {
            max_width: args.grid.width,
            max_height: args.grid.height,
            densities: args
                .density
                .map_or_else(|| DEFAULT_DENSITIES.to_vec(), |d| vec![d]),
            seed: args.seed,
            runs: args.runs,
            every_step: args.every_step,
        };
        let s = verify_random(&plan);
        print_summary(
            &format!(
                "random up to {}x{} (seed {})",
                args.grid.width, args.grid.height, args.seed
            ),
            &s,
        );
        total.merge(s);
    }
    println!();
    print!("{}", total.cases.table());
    for (delta, why) in total.cases.forbidden.iter().take(5) {
        println!("forbidden transition ({why}): {delta}");
    }
    for delta in total.cases.unmatched.iter().take(5) {
        println!("unmatched delta: {delta}");
    }
    if total.passed() {
        println!("PASS");
        EXIT_OK
    } else {
        println!("FAIL");
        EXIT_INCONSISTENT
    }
}

fn run_classify(args: ClassifyArgs) -> u8 {
    let obj = match load(&args.file, args.format.into()) {
        Ok(obj) => obj,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let verdict = curve_report(&obj, args.adjacency);
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&verdict).expect("verdict serialises")
        );
    } else {
        println!("source: {}", args.file.display());
        print!("{}", curve_text(&verdict));
    }
    if verdict.all_hold() {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    }
}

fn run_gen(args: GenArgs) -> u8 {
    let generated = match (args.curve, args.adjacency) {
        (Some(kind), Some(adjacency)) => {
            generate_curve(kind.into(), adjacency, args.steps, args.seed)
        }
        (Some(_), None) => unreachable!("clap enforces --adjacency with --curve"),
        (None, _) => generate_random(args.width, args.height, args.density, args.seed),
    };
    let obj = match generated {
        Ok(obj) => obj,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    match args.output {
        None => {
            print!("{}", emit_ascii_grid(&obj));
            EXIT_OK
        }
        Some(path) => {
            let is_pbm = path
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("pbm"));
            let bytes = if is_pbm {
                emit_pbm_raw(&obj)
            } else {
                emit_ascii_grid(&obj).into_bytes()
            };
            match fs::write(&path, bytes) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    EXIT_INPUT
                }
            }
        }
    }
}
