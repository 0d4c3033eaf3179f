use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jacring::Route;
use jacring_cli::{
    error_json, resolve_field, run, CliError, Command, CommandRequest, DegreeRange, PolySource, Support, FIELD_ENV,
};

#[derive(Parser)]
#[command(name = "jacring", version, about = "Exact Jacobian-ring computations for hypersurfaces in P^4")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// dim R^k over a degree range, with the expected series
    Hilbert(PolyArgs),
    /// Smoothness certificate from the Hilbert series
    Smooth(PolyArgs),
    /// h^{3,0} and h^{2,1} via residues
    Hodge(PolyArgs),
    /// Dimension of the infinitesimal Abel-Jacobi image
    AjImage(PolyArgs),
    /// Socle pairing ranks
    Pairing(PolyArgs),
    /// Write a seeded random hypersurface as a polynomial file
    Random(RandomArgs),
}

#[derive(Args)]
struct Common {
    /// q or fp:<prime> [default: fp:65521, or $JACRING_DEFAULT_FIELD]
    #[arg(long)]
    field: Option<String>,
    /// Expand the JSON output
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Direct,
    Dual,
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial file, or `-` for stdin
    #[arg(long)]
    poly: Option<String>,
    /// Inclusive range A..B
    #[arg(long)]
    degrees: Option<String>,
    /// File of polynomials spanning W, one per line (aj-image)
    #[arg(long)]
    w: Option<PathBuf>,
    /// How graded pieces are computed
    #[arg(long, value_enum, default_value = "auto")]
    route: RouteArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    d: Option<u32>,
    /// full, fermat or sparse:<K>
    #[arg(long, default_value = "full")]
    support: String,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    common: Common,
}

fn build(cli: Cli) -> Result<(CommandRequest, bool), CliError> {
    let env_field = std::env::var(FIELD_ENV).ok();
    let (command, common) = match &cli.command {
        Sub::Hilbert(a) => (Command::Hilbert, &a.common),
        Sub::Smooth(a) => (Command::Smooth, &a.common),
        Sub::Hodge(a) => (Command::Hodge, &a.common),
        Sub::AjImage(a) => (Command::AjImage, &a.common),
        Sub::Pairing(a) => (Command::Pairing, &a.common),
        Sub::Random(a) => (Command::Random, &a.common),
    };
    let mut request = CommandRequest::new(command);
    request.field = resolve_field(common.field.as_deref(), env_field.as_deref())?;
    let pretty = common.pretty;
    match cli.command {
        Sub::Random(a) => {
            request.d = a.d;
            request.seed = a.seed;
            request.support = a.support.parse::<Support>()?;
        }
        Sub::Hilbert(a) | Sub::Smooth(a) | Sub::Hodge(a) | Sub::AjImage(a) | Sub::Pairing(a) => {
            request.poly = match a.poly.as_deref() {
                None => None,
                Some("-") => {
                    let mut text = String::new();
                    io::stdin()
                        .read_to_string(&mut text)
                        .map_err(|e| CliError::Io { path: "-".into(), source: e })?;
                    Some(PolySource::Text(text))
                }
                Some(path) => Some(PolySource::Path(path.into())),
            };
            request.degrees = a.degrees.as_deref().map(str::parse::<DegreeRange>).transpose()?;
            request.w = a.w;
            request.route = match a.route {
                RouteArg::Auto => Route::Auto,
                RouteArg::Direct => Route::Direct,
                RouteArg::Dual => Route::Dual,
            };
        }
    }
    Ok((request, pretty))
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim_end().to_string());
            emit(&error_json(None, &err, false));
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let (request, pretty) = match build(cli) {
        Ok(r) => r,
        Err(err) => {
            emit(&error_json(None, &err, false));
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let outcome = std::panic::catch_unwind(|| run(&request))
        .unwrap_or_else(|_| Err(CliError::Internal("internal failure".to_string())));
    match outcome {
        Ok(output) => {
            emit(&output.render(pretty));
            ExitCode::SUCCESS
        }
        Err(err) => {
            emit(&error_json(Some(request.command), &err, pretty));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
