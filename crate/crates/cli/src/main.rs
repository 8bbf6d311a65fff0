//! `satlattice`: verify, build, search and analyze induced-2C2-saturated
//! families from the command line.
//!
//! Exit status: 0 on success or a positive verdict, 1 on a negative verdict
//! (not saturated, nonempty diff, failed audit), 2 on usage or input errors.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use satlattice::chain::extract_maximal_chain;
use satlattice::constructions::{verify_construction, ConstructionKind, ConstructionSpec};
use satlattice::freeness::certify;
use satlattice::search::{catalog_diff, enumerate_at, search, search_min, Catalog, SearchConfig};
use satlattice::witness::audit;
use satlattice::Error;

use input::FamilyArgs;
use output::{Outcome, Report};

#[derive(Parser)]
#[command(
    name = "satlattice",
    version,
    about = "Induced-2C2-saturated families in the Boolean lattice"
)]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a family is free and saturated.
    Verify(FamilyArgs),
    /// Build one of the known constructions and verify it.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Parameter of the `fstar` construction, 2 <= i <= n-1.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Count saturated families containing the chain, by size.
    Search(SearchArgs),
    /// List every saturated family of one size with its dual, in the
    /// golden-file format.
    Enumerate(SearchArgs),
    /// Witness and load audit of a saturated family containing the chain.
    Analyze(FamilyArgs),
    /// Extract a maximal chain from a saturated family.
    ExtractChain {
        #[command(flatten)]
        family: FamilyArgs,
        /// Skip the saturation check before extracting.
        #[arg(long)]
        no_verify: bool,
    },
    /// Compare an enumerated (or stored) catalog with a golden file.
    CatalogDiff {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        golden: PathBuf,
        /// Catalog size; defaults to 2n.
        #[arg(long)]
        size: Option<usize>,
        /// Read the catalog from this JSON file instead of searching.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Singletons,
    Fstar,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads (default: all cores).
    #[arg(long, env = "SATLATTICE_THREADS")]
    threads: Option<usize>,
    /// Report progress on stderr every this many seconds.
    #[arg(long, value_name = "SECS")]
    progress: Option<f64>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    /// Find the smallest size in n+2..=2n with a saturated family.
    #[arg(long, conflicts_with_all = ["size", "min_size", "max_size"])]
    min: bool,
    /// Exactly this family size (default 2n).
    #[arg(long, conflicts_with_all = ["min_size", "max_size"])]
    size: Option<usize>,
    /// Lower end of a size range (search only).
    #[arg(long, requires = "max_size")]
    min_size: Option<usize>,
    /// Upper end of a size range (search only).
    #[arg(long, requires = "min_size")]
    max_size: Option<usize>,
    /// Force only the empty set and [n] instead of the whole chain.
    #[arg(long)]
    no_fix_chain: bool,
    /// Allow ground sizes above the default caps.
    #[arg(long)]
    allow_large: bool,
    /// Record finished shards here and resume from it.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Write the resulting catalog as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    run: RunArgs,
}

impl RunArgs {
    fn apply(&self, mut config: SearchConfig) -> Result<SearchConfig, Error> {
        if let Some(t) = self.threads {
            config = config.threads(t);
        }
        if let Some(secs) = self.progress {
            if !(secs.is_finite() && secs >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "bad progress interval {secs}"
                )));
            }
            config = config.progress(Duration::from_secs_f64(secs));
        }
        Ok(config)
    }
}

impl SearchArgs {
    fn config(&self) -> Result<SearchConfig, Error> {
        let mut config = SearchConfig::new(self.n)
            .fix_chain(!self.no_fix_chain)
            .allow_large(self.allow_large);
        if let Some(path) = &self.checkpoint {
            config = config.checkpoint(path);
        }
        self.run.apply(config)
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Verify(args) => {
            let family = args.family()?;
            let certificate = certify(&family);
            let outcome = Outcome::from_verdict(certificate.is_saturated());
            Ok(Report::verify(&family, certificate, outcome))
        }
        Command::Construct { kind, n, i } => {
            let kind = match (kind, i) {
                (Kind::Singletons, None) => ConstructionKind::Singletons,
                (Kind::Fstar, Some(i)) => ConstructionKind::FStar { i: *i },
                (Kind::Singletons, Some(_)) => {
                    return Err(Error::InvalidArgument("--i only applies to fstar".into()))
                }
                (Kind::Fstar, None) => {
                    return Err(Error::InvalidArgument("fstar needs --i".into()))
                }
            };
            let report = verify_construction(&ConstructionSpec { kind, n: *n })?;
            let outcome = Outcome::from_verdict(report.certificate.is_saturated());
            Ok(Report::construct(report, outcome))
        }
        Command::Search(args) => {
            let config = args.config()?;
            if args.min {
                let (size, catalog, outcome) = search_min(&config)?;
                write_catalog(args, &catalog)?;
                return Ok(Report::search(&outcome, Some(size)));
            }
            let (lo, hi) = match (args.size, args.min_size, args.max_size) {
                (Some(s), _, _) => (s, s),
                (None, Some(lo), Some(hi)) => (lo, hi),
                _ => (2 * args.n, 2 * args.n),
            };
            let outcome = search(&config.sizes(lo, hi))?;
            if lo == hi {
                let families = outcome.by_size.get(&lo).cloned().unwrap_or_default();
                write_catalog(
                    args,
                    &satlattice::search::group_by_duality(args.n, lo, families)?,
                )?;
            } else if args.out.is_some() {
                return Err(Error::InvalidArgument("--out needs a single size".into()));
            }
            Ok(Report::search(&outcome, None))
        }
        Command::Enumerate(args) => {
            if args.min_size.is_some() {
                return Err(Error::InvalidArgument(
                    "enumerate takes --size or --min".into(),
                ));
            }
            let config = args.config()?;
            let catalog = if args.min {
                search_min(&config)?.1
            } else {
                enumerate_at(&config, args.size.unwrap_or(2 * args.n))?
            };
            write_catalog(args, &catalog)?;
            Ok(Report::enumerate(catalog))
        }
        Command::Analyze(args) => {
            let family = args.family()?;
            let report = audit(&family)?;
            let outcome = Outcome::from_verdict(report.passed());
            Ok(Report::analyze(report, outcome))
        }
        Command::ExtractChain { family, no_verify } => {
            let family = family.family()?;
            match extract_maximal_chain(&family, !no_verify) {
                Ok((chain, trace)) => Ok(Report::extract(&family, chain, trace)),
                Err(
                    e @ (Error::NotSaturated(_)
                    | Error::Extraction { .. }
                    | Error::Trichotomy { .. }),
                ) => Ok(Report::failure("extract-chain", e.to_string())),
                Err(e) => Err(e),
            }
        }
        Command::CatalogDiff {
            n,
            golden,
            size,
            catalog,
            run,
        } => {
            let size = size.unwrap_or(2 * n);
            let catalog: Catalog = match catalog {
                Some(path) => {
                    let c: Catalog = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    if c.n != *n || c.size != size {
                        return Err(Error::InvalidArgument(format!(
                            "{} holds n = {}, size {}",
                            path.display(),
                            c.n,
                            c.size
                        )));
                    }
                    c
                }
                None => enumerate_at(&run.apply(SearchConfig::new(*n))?, size)?,
            };
            let text = std::fs::read_to_string(golden)?;
            let diff = catalog_diff(&catalog, &text)?;
            Ok(Report::diff(&catalog, &diff))
        }
    }
}

fn write_catalog(args: &SearchArgs, catalog: &Catalog) -> Result<(), Error> {
    if let Some(path) = &args.out {
        std::fs::write(path, serde_json::to_string_pretty(catalog)? + "\n")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            report.print(cli.json);
            ExitCode::from(report.outcome.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
