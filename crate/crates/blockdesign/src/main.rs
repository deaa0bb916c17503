use std::path::PathBuf;

use clap::{Parser, Subcommand};

use blockdesign::commands::{
    cmd_classify, cmd_design_orbit, cmd_design_search, cmd_design_verify, cmd_group_info,
    cmd_sieve, CommandResult, SearchSource,
};

/// Feasibility sieves, orbit designs and isomorphism classification for
/// 3-designs with small block size.
#[derive(Parser)]
#[command(name = "blockdesign", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one of the arithmetic feasibility sieves.
    Sieve {
        /// imprimitive | product | diagonal | twisted
        kind: String,
        /// Block size, 3..=6.
        #[arg(long)]
        k: u64,
        /// CSV of simple groups (name,order,out_order) for the diagonal
        /// sieve; the bundled table is used when absent.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Construct, verify or search for designs.
    Design {
        #[command(subcommand)]
        action: DesignAction,
    },
    /// Inspect a permutation group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Bucket design files into isomorphism classes.
    Classify {
        /// Design files or directories of design files.
        paths: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DesignAction {
    /// Orbit of a base block under a group, verified as a t-design.
    Orbit {
        /// builtin:<name>, file:<path>#<name>, or a single-record file.
        #[arg(long)]
        group: String,
        /// Comma-separated 1-based points, e.g. 1,2,3,4,9,10.
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 3)]
        t: usize,
        /// Write the design file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a design file.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        t: usize,
    },
    /// Enumerate block orbits with a class-intersection pattern and report
    /// every lambda achieved by a 3-design among them.
    Search {
        /// Single group source (exclusive with --catalog).
        #[arg(long)]
        group: Option<String>,
        /// Catalog file, or the word `builtin`; every transitive
        /// imprimitive record is searched.
        #[arg(long)]
        catalog: Option<String>,
        /// Comma-separated pattern, e.g. 4,2.
        #[arg(long)]
        pattern: String,
        /// Write each design found into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Order, transitivity, subdegrees, rank and block systems.
    Info {
        #[arg(long)]
        group: String,
    },
}

fn parse_numbers(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad number {:?}", tok))
        })
        .collect()
}

fn dispatch(cli: Cli) -> CommandResult {
    match cli.command {
        Command::Sieve { kind, k, table } => cmd_sieve(&kind, k, table.as_deref()),
        Command::Group {
            action: GroupAction::Info { group },
        } => cmd_group_info(&group),
        Command::Design { action } => match action {
            DesignAction::Orbit {
                group,
                base,
                t,
                out,
            } => match parse_numbers(&base) {
                Ok(points) => {
                    let points: Vec<usize> = points.into_iter().map(|p| p as usize).collect();
                    cmd_design_orbit(&group, &points, t, out.as_deref())
                }
                Err(msg) => CommandResult {
                    exit_code: 2,
                    stdout: format!("error: {}\n", msg),
                },
            },
            DesignAction::Verify { file, t } => cmd_design_verify(&file, t),
            DesignAction::Search {
                group,
                catalog,
                pattern,
                emit_dir,
            } => {
                let source = match (group, catalog) {
                    (Some(g), None) => SearchSource::Group(g),
                    (None, Some(c)) if c == "builtin" => SearchSource::CatalogBuiltin,
                    (None, Some(c)) => SearchSource::CatalogFile(PathBuf::from(c)),
                    _ => {
                        return CommandResult {
                            exit_code: 2,
                            stdout: "error: give exactly one of --group or --catalog\n".into(),
                        }
                    }
                };
                match parse_numbers(&pattern) {
                    Ok(parts) => cmd_design_search(&source, &parts, emit_dir.as_deref()),
                    Err(msg) => CommandResult {
                        exit_code: 2,
                        stdout: format!("error: {}\n", msg),
                    },
                }
            }
        },
        Command::Classify { paths } => cmd_classify(&paths),
    }
}

fn main() {
    let cli = Cli::parse();
    let result = dispatch(cli);
    print!("{}", result.stdout);
    std::process::exit(result.exit_code);
}
