use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pwcheck_core::periods::QuadratureGrid;
use pwcheck_core::pwreport::{self, parse_config_file, Fault, FileConfig, RunConfig};
use pwcheck_core::Error;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_DIVERGED: u8 = 3;

#[derive(Parser)]
#[command(name = "pwcheck", version, about = "Check P=W for two-dimensional cluster varieties against elliptic fibrations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check for one surface and emit a report.
    Verify(VerifyArgs),
    /// Run `verify` for b = 1..=b-max and emit one aggregate report.
    Sweep(SweepArgs),
    /// Print only the weight and perverse tables.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct Common {
    /// Surface family: 0, I or II.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    quad_theta: Option<usize>,
    #[arg(long)]
    quad_phi: Option<usize>,
    /// Bound on both the refinement estimate and the closed-form deviation.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `key = value` file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Corrupt one entry before checking, e.g. `weight:2:2:+1` or `monodromy:0:0:1:-1`.
    #[arg(long = "fault")]
    faults: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    b: Option<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    b_max: Option<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

struct Resolved {
    run: RunConfig,
    b_max: Option<u32>,
    format: Format,
    out: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<Format, Error> {
    match s {
        "json" => Ok(Format::Json),
        "markdown" => Ok(Format::Markdown),
        other => Err(Error::InvalidConfig(format!("unknown format {other:?}"))),
    }
}

fn resolve(common: &Common, b: Option<u32>, b_max: Option<u32>) -> Result<Resolved, Error> {
    let file = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
            parse_config_file(&text)?
        }
        None => FileConfig::default(),
    };
    let family = match &common.family {
        Some(f) => f.parse()?,
        None => file.family.ok_or_else(|| Error::InvalidConfig("--family is required".into()))?,
    };
    let faults = if common.faults.is_empty() {
        file.faults
    } else {
        common.faults.iter().map(|f| f.parse::<Fault>()).collect::<Result<_, _>>()?
    };
    let format = match (common.format, &file.format) {
        (Some(f), _) => f,
        (None, Some(s)) => parse_format(s)?,
        (None, None) => Format::Json,
    };
    let run = RunConfig {
        family,
        b: b.or(file.b),
        grid: QuadratureGrid {
            n_theta: common.quad_theta.or(file.quad_theta).unwrap_or(512),
            n_phi: common.quad_phi.or(file.quad_phi).unwrap_or(512),
        },
        tol: common.tol.or(file.tol).unwrap_or(1e-8),
        faults,
    };
    Ok(Resolved {
        run,
        b_max: b_max.or(file.b_max),
        format,
        out: common.out.clone().or(file.out.map(PathBuf::from)),
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tables_markdown(t: &pwreport::Tables) -> String {
    let mut s = String::new();
    let b = t.b.map_or("-".to_string(), |b| b.to_string());
    let _ = writeln!(s, "# Tables: family {}, b = {b}\n", t.family);
    let _ = writeln!(s, "| dim Gr^W_w H^d | w=0 | w=1 | w=2 | w=3 | w=4 |\n|---|---|---|---|---|---|");
    for (d, row) in t.weight_table.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "| H^{d} | {} |", cells.join(" | "));
    }
    let _ = writeln!(s, "\n| dim Gr^P_k H^d | k=0 | k=1 | k=2 |\n|---|---|---|---|");
    for (d, row) in t.perverse_table.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "| H^{d} | {} |", cells.join(" | "));
    }
    s
}

fn execute(command: Command) -> Result<u8, Error> {
    match command {
        Command::Verify(args) => {
            let r = resolve(&args.common, args.b, None)?;
            let report = pwreport::run(&r.run)?;
            let text = match r.format {
                Format::Json => report.to_json() + "\n",
                Format::Markdown => report.to_markdown(),
            };
            emit(&text, r.out.as_ref())?;
            Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Sweep(args) => {
            let r = resolve(&args.common, None, args.b_max)?;
            let report = pwreport::sweep(&r.run, r.b_max)?;
            let text = match r.format {
                Format::Json => report.to_json() + "\n",
                Format::Markdown => report.to_markdown(),
            };
            emit(&text, r.out.as_ref())?;
            Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Tables(args) => {
            let t = pwreport::tables(args.family.parse()?, args.b)?;
            let text = match args.format {
                Format::Json => t.to_json() + "\n",
                Format::Markdown => tables_markdown(&t),
            };
            emit(&text, None)?;
            Ok(EXIT_PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("pwcheck: {e}");
            ExitCode::from(match e {
                Error::QuadratureDiverged { .. } => EXIT_DIVERGED,
                _ => EXIT_INVALID,
            })
        }
    }
}
