//! Batch front-end: parse a category description, run one computation, emit
//! a deterministic report. Exit codes: 0 on success, 2 when every verdict in
//! the report is inconclusive, 1 on error.

use homkern_cli::{commands, parse, report};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use report::Status;

#[derive(Parser)]
#[command(name = "homkern", version, about = "exact kernel invariants and additive topologies on finitely presented categories")]
struct Cli {
    /// Category description file (required by most commands)
    #[arg(long, global = true)]
    category: Option<PathBuf>,

    /// Assert the base field of the category file (Q, F2, F3, ...)
    #[arg(long, global = true)]
    field: Option<String>,

    /// Truncate the dot budget of a one-endomorphism window
    #[arg(long, global = true)]
    window_dots: Option<usize>,

    /// Restrict a declared kernel-completion skeleton to these names
    #[arg(long, global = true)]
    skeleton: Option<String>,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Machine-readable report with identical content
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled checks (echoed into reports that sample)
    #[arg(long, global = true, default_value_t = 987654321)]
    seed: u64,

    /// Verbosity; at 1 the report includes timing
    #[arg(short, long, global = true, default_value_t = 0)]
    verbose: u8,

    /// Guard for sieve-lattice and topology enumeration
    #[arg(long, global = true, default_value_t = 1_000_000)]
    limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension (and basis, for diagram windows) of a hom space
    Hom {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Compose two morphism expressions
    Compose {
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
    },
    /// Hom space in the kernel completion (objects: `N R` or morphism exprs)
    NoyHom {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Homotopy classes of chain maps between two-term complexes
    KbHom {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Canonical kernel at an object
    Sigma {
        #[arg(long)]
        object: String,
        #[arg(long)]
        morphism: String,
        /// Comma-separated test objects; restricting drops completeness
        #[arg(long)]
        window: Option<String>,
    },
    /// Homological kernel of a functor at an object
    SigmaTheta {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        morphism: String,
    },
    /// Exactness certificates for a functor over the generator window
    Prexact {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        morphism: Option<String>,
        /// Comma-separated test objects; restricting drops completeness
        #[arg(long)]
        window: Option<String>,
    },
    /// Weak-kernel preservation for the degree-zero promotion of a functor
    Flat {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        morphism: Option<String>,
        /// Comma-separated test objects; restricting drops completeness
        #[arg(long)]
        window: Option<String>,
    },
    /// Enumerate every Grothendieck topology on the skeleton
    Topologies,
    /// Covering decisions induced by a functor (homological on skeletons)
    TopologyOf {
        #[arg(long)]
        functor: String,
    },
    /// Canonical or homological kernel at the monoidal unit
    Hsigma {
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        functor: Option<String>,
        #[arg(long)]
        window_len: Option<usize>,
    },
    /// Agreement of the kernel-functor and graded-homology realizations
    MuNu {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        morphism: Option<String>,
        /// Extra seeded sample morphisms on top of the basis window
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Rank of the divided-power image in characteristic p
    FrPlus {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(&cli);
    match result {
        Ok(mut rep) => {
            rep.elapsed_ms = Some(started.elapsed().as_millis());
            let text = if cli.json {
                rep.to_json(cli.verbose > 0)
            } else {
                rep.to_text(cli.verbose > 0)
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        std::process::exit(1);
                    }
                }
                None => print!("{text}"),
            }
            std::process::exit(match rep.status {
                Status::Ok => 0,
                Status::Inconclusive => 2,
            });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn run(cli: &Cli) -> Result<report::Report, homkern::Error> {
    let mut parsed = match &cli.category {
        Some(path) => Some(parse::parse_file(path)?),
        None => None,
    };
    if let Some(p) = parsed.as_mut() {
        parse::apply_overrides(p, cli.field.as_deref(), cli.window_dots, cli.skeleton.as_deref())?;
    }
    let need = || {
        parsed
            .as_ref()
            .ok_or_else(|| homkern::Error::Parse { line: 0, msg: "missing --category".into() })
    };
    match &cli.command {
        Command::Hom { source, target } => commands::cmd_hom(need()?, source, target),
        Command::Compose { g, f } => commands::cmd_compose(need()?, g, f),
        Command::NoyHom { f, g } => commands::cmd_noy_hom(need()?, f, g),
        Command::KbHom { x, y } => commands::cmd_kb_hom(need()?, x, y),
        Command::Sigma { object, morphism, window } => {
            commands::cmd_sigma(need()?, object, morphism, window.as_deref())
        }
        Command::SigmaTheta { functor, object, morphism } => {
            commands::cmd_sigma_theta(need()?, functor, object, morphism)
        }
        Command::Prexact { functor, morphism, window } => {
            commands::cmd_prexact(need()?, functor, morphism.as_deref(), window.as_deref())
        }
        Command::Flat { functor, morphism, window } => {
            commands::cmd_flat(need()?, functor, morphism.as_deref(), window.as_deref())
        }
        Command::Topologies => commands::cmd_topologies(need()?, cli.limit),
        Command::TopologyOf { functor } => commands::cmd_topology_of(need()?, functor, cli.limit),
        Command::Hsigma { morphism, functor, window_len } => {
            commands::cmd_hsigma(need()?, morphism, functor.as_deref(), *window_len)
        }
        Command::MuNu { functor, morphism, samples } => {
            commands::cmd_mu_nu(need()?, functor, morphism.as_deref(), *samples, cli.seed)
        }
        Command::FrPlus { p, n } => commands::cmd_fr_plus(*p, *n),
    }
}
