use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use nsym::cli::{self, Command, Format, Ordering, RunConfig, Space};
use nsym::exact::Rational;

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sym,
    Antisym,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

/// Exact brackets, Hamiltonian fields and quantization of vector-valued
/// observables.
#[derive(Parser)]
#[command(name = "nsym", version)]
struct Args {
    /// bracket | hvf | quantize | project | verify | kernel
    command: String,
    /// frame:N, circle, c2 or s3
    #[arg(long, default_value = "frame:2")]
    space: String,
    #[arg(long, value_enum, default_value = "sym")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long = "max-mode", default_value_t = 4)]
    max_mode: i64,
    #[arg(long = "max-deg", default_value_t = 3)]
    max_deg: u32,
    /// Covector for `project`, comma separated, e.g. `1,0` or `1/2,3`
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<String>>,
    /// Expressions, or suite names for `verify`; put `--` before one that starts with `-`
    exprs: Vec<String>,
}

fn config(args: &Args) -> nsym::Result<(RunConfig, Command)> {
    let alpha = args
        .alpha
        .as_ref()
        .map(|xs| {
            xs.iter()
                .map(|x| {
                    x.trim()
                        .parse::<Rational>()
                        .map_err(|_| nsym::Error::UnknownSymbol(format!("covector entry `{x}`")))
                })
                .collect::<nsym::Result<Vec<_>>>()
        })
        .transpose()?;
    let cfg = RunConfig {
        space: args.space.parse::<Space>()?,
        mode: match args.mode {
            ModeArg::Sym => Ordering::Sym,
            ModeArg::Antisym => Ordering::Antisym,
        },
        format: match args.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        seed: args.seed,
        trials: args.trials,
        max_mode: args.max_mode,
        max_deg: args.max_deg,
        alpha,
    };
    Ok((cfg, args.command.parse()?))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = config(&args).and_then(|(cfg, command)| Ok((cli::run(&cfg, command, &args.exprs)?, cfg.format)));
    match outcome {
        Ok((out, format)) => {
            // A closed pipe (e.g. `| head`) is not an error of the run.
            let _ = writeln!(std::io::stdout(), "{}", out.render(format).trim_end());
            if out.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
