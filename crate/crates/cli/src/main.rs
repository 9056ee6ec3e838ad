//! Command-line front end for the mean-ratio bound library.
//!
//! Three subcommands: `bound` evaluates the closed forms for an
//! instance, `verify` pits a closed form against the maximization
//! oracle plus a randomized soundness sweep, and `sweep` emits a
//! refined-vs-classical comparison table over an r2 grid as CSV or
//! JSON. Reals are printed with 17 significant digits so output
//! round-trips bit-exactly.
//!
//! Exit codes: 0 success, 1 verification failure, 2 infeasible
//! instance or bound-domain violation, 64 usage error, 73 output I/O
//! error.

mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use meanbound::tolerances::ORACLE_AGREEMENT_TOL;
use meanbound::{
    dominance_grid, maximize_ratio, soundness_sweep, tung_bound_am, tung_bound_gm, tung_gap,
    xia_bound_am, xia_bound_gm, KnownRatios, Mode, OracleConfig,
};
use report::{BoundsSection, OracleSection, RunReport, SweepReport, SweepRow};

const EXIT_VERIFY_FAILED: i32 = 1;
const EXIT_INFEASIBLE: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_IO: i32 = 73;

#[derive(Parser)]
#[command(
    name = "meanbound",
    version,
    about = "Sharp upper bounds on the geometric-to-arithmetic mean ratio under partial information"
)]
struct Cli {
    /// Base seed for the oracle's restarts and the soundness sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Emit a JSON report (for sweep: instead of CSV).
    #[arg(long, global = true)]
    json: bool,

    /// Write output to this path instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Verification gate: largest |bound - oracle max| that `verify`
    /// accepts (default 1e-6). Other commands ignore it.
    #[arg(long, global = true, value_name = "REAL")]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate closed-form bounds for one instance.
    Bound(BoundArgs),
    /// Check a closed-form bound against the maximization oracle and a
    /// randomized soundness sweep.
    Verify(VerifyArgs),
    /// Emit a refined-vs-classical comparison table over an r2 grid at
    /// fixed r1.
    Sweep(SweepArgs),
}

#[derive(clap::Args)]
struct InstanceArgs {
    /// Which mean the known ratios are relative to.
    #[arg(long, value_enum)]
    mode: CliMode,

    /// Total count of numbers.
    #[arg(short = 'n', long)]
    n: usize,

    /// Known ratios r_1..r_m, comma separated.
    #[arg(short = 'r', long = "ratios", value_delimiter = ',', required = true)]
    ratios: Vec<f64>,
}

#[derive(clap::Args)]
struct BoundArgs {
    #[command(flatten)]
    instance: InstanceArgs,

    /// Which bound(s) to evaluate. `tung` and `gap` need exactly two
    /// ratios (largest first for `gap`).
    #[arg(long, value_enum, default_value_t = FormulaArg::All)]
    formula: FormulaArg,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,

    /// Independent search restarts.
    #[arg(long, default_value_t = 16)]
    restarts: usize,

    /// Sweep budget per restart.
    #[arg(long, default_value_t = 10_000)]
    max_iterations: usize,

    /// Relative per-sweep improvement treated as converged.
    #[arg(long, default_value_t = 1e-12)]
    step_tolerance: f64,

    /// Random completions drawn for the soundness sweep.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,

    /// Worker threads for restarts (0 = automatic).
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Which mean the two ratios are relative to.
    #[arg(long, value_enum)]
    mode: CliMode,

    /// Total count of numbers.
    #[arg(short = 'n', long)]
    n: usize,

    /// Fixed largest-value ratio (>= 1).
    #[arg(long)]
    r1: f64,

    /// Grid start, in (0, 1].
    #[arg(long)]
    r2_start: f64,

    /// Grid end, in [r2-start, 1].
    #[arg(long)]
    r2_end: f64,

    /// Grid size, endpoints included.
    #[arg(long)]
    points: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    Am,
    Gm,
}

impl CliMode {
    fn to_mode(self) -> Mode {
        match self {
            CliMode::Am => Mode::RelativeToAm,
            CliMode::Gm => Mode::RelativeToGm,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CliMode::Am => "am",
            CliMode::Gm => "gm",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaArg {
    Xia,
    Tung,
    Gap,
    All,
}

/// 17 significant digits: the shortest precision that round-trips every
/// f64, fixed so downstream diffs are stable.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("meanbound {}", args.join(" "))
}

fn emit(out: &Option<PathBuf>, content: &str) -> i32 {
    let result = match out {
        Some(path) => std::fs::write(path, content),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(content.as_bytes())
        }
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: cannot write output: {err}");
            EXIT_IO
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };

    match &cli.command {
        Command::Bound(args) => cmd_bound(&cli, args),
        Command::Verify(args) => cmd_verify(&cli, args),
        Command::Sweep(args) => cmd_sweep(&cli, args),
    }
}

fn cmd_bound(cli: &Cli, args: &BoundArgs) -> i32 {
    let started = Instant::now();
    let mode = args.instance.mode.to_mode();
    let instance = KnownRatios::new(args.instance.n, mode, args.instance.ratios.clone());
    let m = instance.m();

    let xia = || match mode {
        Mode::RelativeToAm => xia_bound_am(&instance),
        Mode::RelativeToGm => xia_bound_gm(&instance),
    };
    let tung = || match mode {
        Mode::RelativeToAm => tung_bound_am(instance.n, instance.ratios[0], instance.ratios[1]),
        Mode::RelativeToGm => tung_bound_gm(instance.n, instance.ratios[0], instance.ratios[1]),
    };
    let gap = || tung_gap(instance.n, instance.ratios[0], instance.ratios[1]);

    // The two-ratio forms must not be dispatched at the wrong arity;
    // their closures index ratios[0..2].
    if matches!(args.formula, FormulaArg::Tung | FormulaArg::Gap) && m != 2 {
        let name = if args.formula == FormulaArg::Tung { "tung" } else { "gap" };
        eprintln!("error: the {name} bound needs exactly two ratios, got {m}");
        return EXIT_INFEASIBLE;
    }

    let mut bounds = BoundsSection::default();
    let outcome: Result<(), meanbound::BoundError> = (|| {
        let take_xia = |bounds: &mut BoundsSection| -> Result<(), meanbound::BoundError> {
            let report = xia()?;
            if report.feasibility == meanbound::Feasibility::Degenerate {
                eprintln!(
                    "warning: degenerate instance: the ratio sum sits at n, \
                     pinning the free values at zero"
                );
            }
            bounds.xia = Some(report.value);
            Ok(())
        };
        match args.formula {
            FormulaArg::Xia => take_xia(&mut bounds)?,
            FormulaArg::Tung => bounds.tung = Some(tung()?.value),
            FormulaArg::Gap => bounds.gap = Some(gap()?.value),
            FormulaArg::All => {
                take_xia(&mut bounds)?;
                // The two-ratio forms join the report when they apply;
                // out-of-domain or wrong-arity instances just omit them.
                if m == 2 {
                    if let Ok(report) = tung() {
                        bounds.tung = Some(report.value);
                    }
                    if let Ok(report) = gap() {
                        bounds.gap = Some(report.value);
                    }
                }
            }
        }
        Ok(())
    })();

    if let Err(err) = outcome {
        eprintln!("error: {err}");
        return EXIT_INFEASIBLE;
    }

    let content = if cli.json {
        let report = RunReport {
            command: command_echo(),
            version: env!("CARGO_PKG_VERSION"),
            seed: cli.seed,
            mode: args.instance.mode.name().to_string(),
            n: instance.n,
            ratios: instance.ratios.clone(),
            bounds,
            oracle: None,
            duration_seconds: started.elapsed().as_secs_f64(),
        };
        to_json_line(&report)
    } else {
        let mut text = String::new();
        if let Some(v) = bounds.xia {
            text.push_str(&format!("xia {}\n", fmt17(v)));
        }
        if let Some(v) = bounds.tung {
            text.push_str(&format!("tung {}\n", fmt17(v)));
        }
        if let Some(v) = bounds.gap {
            text.push_str(&format!("gap {}\n", fmt17(v)));
        }
        text
    };

    emit(&cli.out, &content)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> i32 {
    let started = Instant::now();
    let mode = args.instance.mode.to_mode();
    let instance = KnownRatios::new(args.instance.n, mode, args.instance.ratios.clone());

    let config = OracleConfig {
        restarts: args.restarts,
        max_iterations: args.max_iterations,
        seed: cli.seed,
        step_tolerance: args.step_tolerance,
        parallelism: args.parallelism,
    };

    let result = match maximize_ratio(&instance, &config) {
        Ok(result) => result,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_INFEASIBLE;
        }
    };
    let sweep = match soundness_sweep(&instance, args.samples, cli.seed) {
        Ok(sweep) => sweep,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_INFEASIBLE;
        }
    };

    let gate = cli.tolerance.unwrap_or(ORACLE_AGREEMENT_TOL);
    let passed = result.gap.abs() <= gate && sweep.violations == 0;

    let content = if cli.json {
        let report = RunReport {
            command: command_echo(),
            version: env!("CARGO_PKG_VERSION"),
            seed: cli.seed,
            mode: args.instance.mode.name().to_string(),
            n: instance.n,
            ratios: instance.ratios.clone(),
            bounds: BoundsSection {
                xia: Some(result.closed_form_bound),
                ..BoundsSection::default()
            },
            oracle: Some(OracleSection {
                closed_form_bound: result.closed_form_bound,
                max_ratio: result.max_ratio,
                gap: result.gap,
                converged: result.converged,
                iterations: result.iterations_used,
                restarts: args.restarts,
                samples: sweep.samples,
                violations: sweep.violations,
                worst_ratio: sweep.worst_ratio,
            }),
            duration_seconds: started.elapsed().as_secs_f64(),
        };
        to_json_line(&report)
    } else {
        format!(
            "bound {}\noracle_max {}\ngap {}\nconverged {}\niterations {}\nviolations {}\nworst_ratio {}\n",
            fmt17(result.closed_form_bound),
            fmt17(result.max_ratio),
            fmt17(result.gap),
            result.converged,
            result.iterations_used,
            sweep.violations,
            fmt17(sweep.worst_ratio),
        )
    };

    let io_code = emit(&cli.out, &content);
    if io_code != 0 {
        return io_code;
    }
    if passed {
        0
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn cmd_sweep(cli: &Cli, args: &SweepArgs) -> i32 {
    let started = Instant::now();
    if args.n == 0 {
        eprintln!("error: n must be at least 1");
        return EXIT_USAGE;
    }
    if args.r1.is_nan() || args.r1 < 1.0 {
        eprintln!("error: r1 must be at least 1");
        return EXIT_USAGE;
    }
    let grid_ok = args.r2_start > 0.0 && args.r2_start <= args.r2_end && args.r2_end <= 1.0;
    if !grid_ok {
        eprintln!("error: the grid must satisfy 0 < r2-start <= r2-end <= 1");
        return EXIT_USAGE;
    }
    if args.points == 0 {
        eprintln!("error: points must be at least 1");
        return EXIT_USAGE;
    }
    if args.points == 1 && args.r2_start != args.r2_end {
        eprintln!("error: a single-point grid requires r2-start = r2-end");
        return EXIT_USAGE;
    }

    // Uniform grid, both endpoints exact.
    let grid: Vec<f64> = if args.points == 1 {
        vec![args.r2_start]
    } else {
        (0..args.points)
            .map(|i| {
                let t = i as f64 / (args.points - 1) as f64;
                args.r2_start * (1.0 - t) + args.r2_end * t
            })
            .collect()
    };

    let points = dominance_grid(args.n, args.mode.to_mode(), args.r1, &grid);

    let content = if cli.json {
        let report = SweepReport {
            command: command_echo(),
            version: env!("CARGO_PKG_VERSION"),
            seed: cli.seed,
            mode: args.mode.name().to_string(),
            n: args.n,
            r1: args.r1,
            r2_start: args.r2_start,
            r2_end: args.r2_end,
            points: args.points,
            rows: points
                .iter()
                .map(|p| SweepRow {
                    r2: p.r2,
                    xia_bound: p.xia,
                    tung_bound: p.tung,
                    margin: p.margin,
                    domain_ok: p.domain_ok,
                })
                .collect(),
            duration_seconds: started.elapsed().as_secs_f64(),
        };
        to_json_line(&report)
    } else {
        let mut csv = String::from("r2,xia_bound,tung_bound,margin,domain_ok\n");
        for p in &points {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt17(p.r2),
                fmt17(p.xia),
                fmt17(p.tung),
                fmt17(p.margin),
                p.domain_ok
            ));
        }
        csv
    };

    emit(&cli.out, &content)
}

fn to_json_line<T: serde::Serialize>(report: &T) -> String {
    let mut line = serde_json::to_string(report).expect("report serializes");
    line.push('\n');
    line
}
