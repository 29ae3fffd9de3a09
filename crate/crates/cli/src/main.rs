use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rht_cli::commands::{self, Format, Outcome, Source};
use rht_core::mapmodel::Route;

#[derive(Parser)]
#[command(name = "rht", version, about = "Rational models of mapping spaces and formality certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Workspace file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// Use a built-in workspace instead (section4, nonformal, thom).
    #[arg(long)]
    builtin: Option<String>,
}

impl Input {
    fn source(self) -> Source {
        match (self.file, self.builtin) {
            (_, Some(b)) => Source::Builtin(b),
            (Some(f), None) => Source::File(f),
            (None, None) => unreachable!("clap requires one of them"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Sullivan,
    Lie,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Ranks of H^n for n = 0..=N of an algebra, C* of a dgl, or a problem's model.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Print the model of F(X, Y) for a problem.
    MapModel {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        problem: Option<String>,
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Decide formality of F(X, Y) through degree N and write the certificate.
    Formality {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        problem: Option<String>,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Directory for `<problem>.cert.json`; defaults to the input's directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Replay a certificate written by `formality`.
    VerifyCertificate {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Run the built-in section4 problem end to end.
    ReproduceSection4 {
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Re-print a workspace in canonical form.
    Print {
        #[command(flatten)]
        input: Input,
    },
}

fn format(f: FormatArg) -> Format {
    match f {
        FormatArg::Table => Format::Table,
        FormatArg::Json => Format::Json,
    }
}

fn with_degree(flag: Option<u32>, run: impl FnOnce(u32) -> Outcome) -> Outcome {
    match commands::resolve_max_degree(flag) {
        Ok(n) => run(n),
        Err(e) => Outcome { stdout: String::new(), stderr: e, code: 1 },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Cohomology { input, name, max_degree, format: f } => {
            with_degree(max_degree, |n| commands::cohomology(&input.source(), name.as_deref(), n, format(f)))
        }
        Command::MapModel { input, problem, route, format: f } => {
            let route = route.map(|r| match r {
                RouteArg::Sullivan => Route::Sullivan,
                RouteArg::Lie => Route::Lie,
            });
            commands::map_model_cmd(&input.source(), problem.as_deref(), route, format(f))
        }
        Command::Formality { input, problem, max_degree, out_dir, format: f } => with_degree(max_degree, |n| {
            commands::formality(&input.source(), problem.as_deref(), n, out_dir.as_deref(), format(f))
        }),
        Command::VerifyCertificate { path, format: f } => commands::verify_certificate(&path, format(f)),
        Command::ReproduceSection4 { max_degree, out_dir, format: f } => {
            with_degree(max_degree, |n| commands::reproduce_section4(n, out_dir.as_deref(), format(f)))
        }
        Command::Print { input } => commands::print(&input.source()),
    };
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        eprintln!("error: {}", out.stderr);
    }
    ExitCode::from(out.code as u8)
}
