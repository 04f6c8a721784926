use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use invring::action::DEFAULT_GROUP_CAP;
use invring_cli::bench::{self, parse_mode};
use invring_cli::{execute, write_file, CliError, PrimarySource, RunConfig, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

/// Minimal generating sets of invariant rings of finite groups.
#[derive(Debug, Parser)]
#[command(name = "invring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a minimal generating set of the invariant ring.
    Compute(RunArgs),
    /// Compute irreducible secondary invariants relative to given primaries.
    Secondary {
        #[command(flatten)]
        run: RunArgs,
        /// One primary invariant per line.
        #[arg(long, value_name = "FILE")]
        primary: PathBuf,
    },
    /// Run every case of a fixture manifest and compare counts.
    Bench {
        /// Directory holding the group files and the manifest.
        #[arg(long, value_name = "DIR")]
        fixtures: PathBuf,
        /// Manifest file name inside the fixture directory.
        #[arg(long, default_value = "bench.toml")]
        manifest: String,
        /// Run only these case ids (repeatable).
        #[arg(long, value_name = "ID")]
        only: Vec<String>,
        #[arg(long, value_name = "K")]
        threads: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_name = "FILE")]
    group: PathBuf,
    /// Field characteristic, overriding the group file header.
    #[arg(long = "char", value_name = "P")]
    characteristic: Option<u64>,
    /// `orbit` or `reynolds`; defaults by group kind.
    #[arg(long)]
    mode: Option<String>,
    /// Write the generators here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Check invariance, minimality and (for small groups) completeness.
    #[arg(long)]
    verify: bool,
    /// Largest group order that will be enumerated.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_GROUP_CAP)]
    cap: usize,
    #[arg(long, value_name = "K")]
    threads: Option<usize>,
}

fn init_threads(threads: Option<usize>) -> Result<(), CliError> {
    let Some(k) = threads else { return Ok(()) };
    if k == 0 {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| CliError::Usage(format!("--threads: {e}")))
}

/// Writes to stdout; a closed pipe (`invring ... | head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn run_compute(args: RunArgs, primary: Option<PathBuf>) -> Result<i32, CliError> {
    init_threads(args.threads)?;
    let mut config = RunConfig::new(&args.group);
    config.characteristic = args.characteristic;
    config.mode = args.mode.as_deref().map(parse_mode).transpose()?;
    config.verify = args.verify;
    config.cap = args.cap;
    config.primary = primary.map(PrimarySource::File);
    let report = execute(&config)?;
    emit(&report.summary());
    match &args.out {
        Some(path) => write_file(path, &report.generator_file())?,
        None => {
            let mut text = String::new();
            for g in &report.generators {
                text.push_str(&format!("{g}\n"));
            }
            emit(&text);
        }
    }
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&report.json).expect("report serializes");
        write_file(path, &(text + "\n"))?;
    }
    Ok(match report.json.verified {
        Some(false) => EXIT_MISMATCH,
        _ => EXIT_OK,
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Compute(args) => run_compute(args, None),
        Command::Secondary { run, primary } => run_compute(run, Some(primary)),
        Command::Bench {
            fixtures,
            manifest,
            only,
            threads,
        } => {
            init_threads(threads)?;
            let results = bench::run_manifest(&fixtures.join(manifest), &only, |line| emit(&format!("{line}\n")))?;
            Ok(bench::exit_code(&results))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("invring: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
