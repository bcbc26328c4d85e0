use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use greenseq::Error;
use greenseq_cli::{commands, parse_vertices, server};

#[derive(Parser)]
#[command(name = "greenseq", version, about = "Green mutations, c-sortable words and hearts of acyclic quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a mutation sequence to the framed quiver.
    Mutate {
        quiver: PathBuf,
        /// Comma separated vertices, e.g. "1,2,1".
        #[arg(long, default_value = "")]
        seq: String,
        /// Fail with exit code 2 at the first red mutation.
        #[arg(long)]
        green_only: bool,
        #[arg(long, value_enum, default_value_t = SeedFormat::Json)]
        format: SeedFormat,
    },
    /// Tabulate the c-sortable words with their hearts, descents, covers and torsion classes.
    Table {
        quiver: PathBuf,
        /// Coxeter element as a vertex order, e.g. "1,2,3".
        #[arg(long)]
        c: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Oriented exchange graph of hearts reachable by green mutation.
    Eg {
        quiver: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// List every maximal green sequence, one per line.
    Maximal {
        quiver: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Run the invariant checks; exits 1 if any check fails.
    Verify {
        quiver: PathBuf,
        #[arg(long)]
        c: String,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Serve the JSON API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Idle session lifetime in seconds.
        #[arg(long, default_value_t = 1800)]
        ttl: u64,
    },
}

fn vertices(s: &str) -> anyhow::Result<Vec<usize>> {
    parse_vertices(s).map_err(anyhow::Error::msg)
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    let out = match cmd {
        Command::Mutate { quiver, seq, green_only, format } => {
            let q = commands::load_quiver(&quiver)?;
            commands::mutate(&q, &vertices(&seq)?, green_only, matches!(format, SeedFormat::Dot))?
        }
        Command::Table { quiver, c, format } => {
            let q = commands::load_quiver(&quiver)?;
            commands::sortable_table(&q, &vertices(&c)?, matches!(format, TableFormat::Json))?
        }
        Command::Eg { quiver, depth, format } => {
            let q = commands::load_quiver(&quiver)?;
            commands::eg(&q, depth, matches!(format, GraphFormat::Json))?
        }
        Command::Maximal { quiver, depth, format } => {
            let q = commands::load_quiver(&quiver)?;
            commands::maximal(&q, depth, matches!(format, TextFormat::Json))?
        }
        Command::Verify { quiver, c, seed, format } => {
            let q = commands::load_quiver(&quiver)?;
            let report = commands::verify(&q, &vertices(&c)?, seed)?;
            print!("{}", commands::render_report(&report, matches!(format, TextFormat::Json))?);
            return Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Serve { port, host, ttl } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(server::serve(SocketAddr::new(host, port), Duration::from_secs(ttl)))?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => match e.downcast_ref::<Error>() {
            Some(Error::NotGreenAt { index, vertex }) => {
                eprintln!("error: not green at step {index} (vertex {vertex})");
                ExitCode::from(2)
            }
            _ => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
    }
}
