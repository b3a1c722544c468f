use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cesymp::builtins;
use cesymp::report::{self, Command, RunOptions, Source};
use cesymp::{AlgebraFile, Error};

/// Exact invariant cohomology and symplectic form detection for Lie algebras.
#[derive(Parser)]
#[command(name = "cesymp", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Jacobi identity, d² = 0 and equivariance of the action.
    Validate(RunArgs),
    /// Per-degree Betti numbers.
    Betti(RunArgs),
    /// Decide whether a closed 2-form with nonzero top power exists.
    Symplectic(RunArgs),
    /// Validation, Betti numbers and symplectic verdicts for every complex.
    Report(RunArgs),
    /// Built-in example algebras.
    Examples {
        #[command(subcommand)]
        action: ExamplesCmd,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    List,
    /// Print the algebra file of a built-in example.
    Show {
        name: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Built-in example name or path to an algebra JSON file.
    input: String,
    /// Work in the subcomplex fixed by the action generators.
    #[arg(long)]
    invariant: bool,
    /// Emit the JSON report.
    #[arg(long)]
    json: bool,
    /// Seed for the random witness search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated witness strategies; `specialize` always runs last.
    #[arg(long, value_delimiter = ',')]
    search: Option<Vec<String>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Validate(a) => (Command::Validate, a),
        Cmd::Betti(a) => (Command::Betti, a),
        Cmd::Symplectic(a) => (Command::Symplectic, a),
        Cmd::Report(a) => (Command::Report, a),
        Cmd::Examples { action } => return examples(action),
    };
    let json = args.json;
    match execute(command, args) {
        Ok(report) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report::render_text(&report));
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(error) => {
            let code = report::exit_code(&error);
            if json {
                let body = serde_json::json!({
                    "schema": report::SCHEMA,
                    "version": report::SCHEMA_VERSION,
                    "error": { "exit_code": code, "message": error.to_string() },
                });
                println!("{}", serde_json::to_string_pretty(&body).expect("static shape"));
            }
            eprintln!("error: {error}");
            ExitCode::from(code as u8)
        }
    }
}

fn execute(command: Command, args: RunArgs) -> Result<report::Report, Error> {
    let (file, source) = load(&args.input)?;
    let mut options = RunOptions {
        invariant: args.invariant,
        seed: args.seed,
        ..RunOptions::default()
    };
    if let Some(search) = args.search {
        options.search = search;
    }
    report::run(command, &file, source, &options)
}

/// A built-in name wins unless a file with that name exists.
fn load(input: &str) -> Result<(AlgebraFile, Source), Error> {
    let path = Path::new(input);
    if path.exists() {
        return Ok((AlgebraFile::parse(path)?, Source::File));
    }
    builtins::get(input)
        .map(|file| (file, Source::Builtin))
        .ok_or_else(|| Error::Parse {
            context: input.to_string(),
            message: "neither a file nor a built-in example (see `cesymp examples list`)".to_string(),
        })
}

fn examples(action: ExamplesCmd) -> ExitCode {
    match action {
        ExamplesCmd::List => {
            for name in builtins::names() {
                let file = builtins::get(&name).expect("listed");
                let description = file.metadata.get("description").and_then(|v| v.as_str()).unwrap_or("");
                println!("{name:<12} {description}");
            }
            ExitCode::SUCCESS
        }
        ExamplesCmd::Show { name } => match builtins::get(&name) {
            Some(file) => {
                println!("{}", file.to_json_pretty());
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("error: no built-in example named {name:?}");
                ExitCode::from(1)
            }
        },
    }
}
