use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use squanta_cli::commands::{run, Command, Options};
use squanta_cli::workspace::load_with_fixtures;
use squanta_cli::CliError;
use squanta_core::search::Suite;

#[derive(Parser)]
#[command(name = "squanta", version, about = "Checks finite quantales, their modules, nuclei and translations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Extra structure files, loaded after the built-in fixtures.
    #[arg(long, global = true)]
    config: Vec<PathBuf>,
    /// Do not load the built-in fixtures.
    #[arg(long, global = true)]
    no_fixtures: bool,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest multiplicity in DM fragments.
    #[arg(long, global = true)]
    fragment: Option<usize>,
    /// Largest antichain in DM fragments.
    #[arg(long, global = true)]
    antichain: Option<usize>,
    #[arg(long, global = true, env = "SQUANTA_WORKERS")]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate structures (all of them when none are named).
    Validate { names: Vec<String> },
    /// Free extensions: DM(X) and h♯ for posets, the free AQM for
    /// pomonoids, extend/restrict round trips for actions.
    Extend {
        #[arg(required = true)]
        names: Vec<String>,
        /// Target quantale for h♯.
        #[arg(long, default_value = "N2")]
        target: String,
    },
    /// Count nuclei, consequence relations and congruences; on a module,
    /// also check structurality.
    Correspond {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Quotient a module by named presentations (every nucleus when none
    /// are named).
    Quotient { module: String, presentations: Vec<String> },
    /// Cyclic projectivity conditions and, optionally, exhaustive lifting.
    Projective {
        names: Vec<String>,
        #[arg(long)]
        module: Option<String>,
        /// Test lifting against all modules on carriers up to this size.
        #[arg(long)]
        exhaustive_lifting: Option<usize>,
    },
    /// Check translation pairs, or every candidate pair between modules.
    Equiv {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Enumerate small structures and run a check suite on each.
    Search {
        /// correspondence, gen-distributivity or projective (default: all).
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long)]
        allow_large: bool,
    },
    /// List the loaded structures.
    List,
}

fn command(cmd: Cmd) -> Result<Command, CliError> {
    Ok(match cmd {
        Cmd::Validate { names } => Command::Validate { names },
        Cmd::Extend { names, target } => Command::Extend { names, target },
        Cmd::Correspond { names } => Command::Correspond { names },
        Cmd::Quotient { module, presentations } => Command::Quotient { module, presentations },
        Cmd::Projective {
            mut names,
            module,
            exhaustive_lifting,
        } => {
            names.extend(module);
            Command::Projective {
                names,
                lifting: exhaustive_lifting,
            }
        }
        Cmd::Equiv { names } => Command::Equiv { names },
        Cmd::Search { suite, size, allow_large } => {
            let suites = suite
                .iter()
                .map(|s| Suite::parse(s).ok_or_else(|| CliError::Usage(format!("unknown suite `{s}`"))))
                .collect::<Result<_, _>>()?;
            Command::Search {
                suites,
                size,
                allow_large,
            }
        }
        Cmd::List => Command::List,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = (|| {
        let ws = load_with_fixtures(&cli.config, !cli.no_fixtures)?;
        let opts = Options::new(&ws, cli.fragment, cli.antichain, cli.workers);
        run(&ws, &command(cli.command)?, opts)
    })();
    let code = match outcome {
        Ok(report) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render());
            }
            report.exit_code()
        }
        Err(e) => {
            if json {
                let v = serde_json::json!({ "error": e.kind(), "message": e.to_string(), "exit": e.exit_code() });
                println!("{v}");
            } else {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
