use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use padic_gkz::cli::{self, Command, Report, EXIT_INVALID, EXIT_NEGATIVE, EXIT_OK};
use padic_gkz::job::{Entry, JobSpec};
use padic_gkz::{GkzError, Limits};

#[derive(Parser)]
#[command(name = "padic-gkz", version, about = "Exact p-adic integrality of A-hypergeometric series")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Relation lattice, and minimality of nsupp(v) when v is given
    Kernel(JobArgs),
    /// Weight w(r) of a vector r
    Weight(JobArgs),
    /// All elements of R_(beta,b)
    Enumerate(JobArgs),
    /// Truncated series terms and their valuations
    Truncate(JobArgs),
    /// Integrality verdict for Phi_v
    Verdict(JobArgs),
    /// Polytope weight of a point and its coset minimum
    Wdelta(JobArgs),
    /// Lower bound on w(R_beta) from coset minima
    Bound(JobArgs),
    /// Domination criteria and coefficient valuations of a classical series
    Classical(JobArgs),
    /// Globally optimal (gamma, b, v) over beta + Z^n
    Search(JobArgs),
    /// Run every preset and compare with the golden reports
    Demo {
        /// Directory holding the golden reports
        #[arg(long, default_value_os_t = default_golden())]
        golden: PathBuf,
        /// Rewrite the golden reports instead of comparing
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Args, Clone, Default)]
struct JobArgs {
    /// TOML job file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in data set: example1, example2, example3, libgober-teitelbaum
    #[arg(long)]
    preset: Option<String>,
    /// Columns of A, as `3,0;0,3;2,2`
    #[arg(long)]
    columns: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    /// Comma-separated rationals
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    b_max: Option<u32>,
    #[arg(long)]
    radius: Option<u32>,
    #[arg(long)]
    cap_w: Option<u32>,
    #[arg(long)]
    j_max: Option<u32>,
    #[arg(long)]
    max_cells: Option<u64>,
    /// Write `<PREFIX>.txt` and `<PREFIX>.json`
    #[arg(long, value_name = "PREFIX")]
    report: Option<PathBuf>,
    /// Print the JSON report instead of the text summary
    #[arg(long)]
    json: bool,
}

fn default_golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn list(s: &Option<String>) -> Option<Vec<Entry>> {
    s.as_ref().map(|s| {
        s.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(Entry::from)
            .collect()
    })
}

fn parse_columns(s: &str) -> Result<Vec<Vec<i64>>, GkzError> {
    s.split(';')
        .map(|col| {
            col.split(',')
                .map(|x| {
                    x.trim().parse::<i64>().map_err(|e| GkzError::Parse {
                        field: "columns".into(),
                        message: format!("{x:?}: {e}"),
                    })
                })
                .collect()
        })
        .collect()
}

fn job_from(args: &JobArgs) -> Result<JobSpec, GkzError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| GkzError::Parse {
                field: "config".into(),
                message: format!("{}: {e}", path.display()),
            })?;
            JobSpec::from_toml(&text)?
        }
        None => JobSpec::default(),
    };
    let mut limits = file.limits;
    if let Some(m) = args.max_cells {
        limits = Some(Limits {
            max_cells: m,
            ..limits.unwrap_or_default()
        });
    }
    let flags = JobSpec {
        preset: args.preset.clone(),
        columns: args.columns.as_deref().map(parse_columns).transpose()?,
        labels: None,
        p: args.p,
        v: list(&args.v),
        beta: list(&args.beta),
        r: list(&args.r),
        theta: list(&args.theta),
        sigma: list(&args.sigma),
        b: args.b,
        b_max: args.b_max,
        radius: args.radius,
        cap_w: args.cap_w,
        j_max: args.j_max,
        limits,
    };
    flags.or(file).resolved()
}

fn emit(report: &Report, args: &JobArgs) -> std::io::Result<()> {
    if args.json {
        print!("{}", cli::golden_text(report));
    } else {
        print!("{}", report.text);
    }
    if let Some(prefix) = &args.report {
        std::fs::write(prefix.with_extension("txt"), &report.text)?;
        std::fs::write(prefix.with_extension("json"), cli::golden_text(report))?;
    }
    Ok(())
}

fn run_job(command: Command, args: &JobArgs) -> u8 {
    let result = job_from(args).and_then(|job| cli::run(command, &job));
    match result {
        Ok(report) => {
            if let Err(e) = emit(&report, args) {
                eprintln!("error: writing report: {e}");
                return EXIT_INVALID;
            }
            report.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            cli::exit_code(&e)
        }
    }
}

fn run_demo(golden: &Path, bless: bool) -> u8 {
    let read = |name: &str| std::fs::read_to_string(golden.join(name)).ok();
    let entries = match cli::demo(|name| if bless { None } else { read(name) }) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return cli::exit_code(&e);
        }
    };
    let mut failed = 0;
    for e in &entries {
        let name = cli::golden_name(e.preset, e.command);
        let status = if bless {
            match std::fs::create_dir_all(golden).and_then(|_| std::fs::write(golden.join(&name), cli::golden_text(&e.report))) {
                Ok(()) => "written",
                Err(err) => {
                    eprintln!("error: {name}: {err}");
                    failed += 1;
                    "write failed"
                }
            }
        } else {
            match e.matches {
                Some(true) => "ok",
                Some(false) => {
                    failed += 1;
                    "MISMATCH"
                }
                None => {
                    failed += 1;
                    "missing golden"
                }
            }
        };
        println!("{:<22} {:<10} {status}", e.preset, e.command.name());
        print!("{}", indent(&e.report.text));
    }
    println!("demo: {} of {} reports match", entries.len() - failed, entries.len());
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("    {l}\n")).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Cmd::Kernel(a) => run_job(Command::Kernel, a),
        Cmd::Weight(a) => run_job(Command::Weight, a),
        Cmd::Enumerate(a) => run_job(Command::Enumerate, a),
        Cmd::Truncate(a) => run_job(Command::Truncate, a),
        Cmd::Verdict(a) => run_job(Command::Verdict, a),
        Cmd::Wdelta(a) => run_job(Command::Wdelta, a),
        Cmd::Bound(a) => run_job(Command::Bound, a),
        Cmd::Classical(a) => run_job(Command::Classical, a),
        Cmd::Search(a) => run_job(Command::Search, a),
        Cmd::Demo { golden, bless } => run_demo(golden, *bless),
    };
    ExitCode::from(code)
}
