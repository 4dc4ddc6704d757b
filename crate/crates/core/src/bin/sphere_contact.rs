use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sphere_contact::feasibility::SearchConfig;
use sphere_contact::pipeline::{
    enumerate, export_svg, load_reference, recertify, verify_reference, Catalog, ExportOptions, PipelineError,
    RunConfig, ViewAxis,
};
use sphere_contact::plane_graph::{generate_candidates, write_planar_code};

/// Irreducible contact graphs of congruent circle packings on the sphere.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the candidate graphs for N as PLANAR_CODE.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search, certify and classify every candidate for N.
    Enumerate(EnumerateArgs),
    /// Re-run search and certification for the records of a catalog.
    Certify {
        #[arg(long)]
        catalog: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare a catalog with the published tables.
    Verify {
        #[arg(long)]
        catalog: PathBuf,
        /// CSV with columns n,row,d_min,d_max,star,double_star,swapped,note.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Draw every embedded record as SVG.
    Export {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "z")]
        view_axis: Axis,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = SearchConfig::default().max_level)]
    max_level: usize,
    #[arg(long, default_value_t = SearchConfig::default().leaf_budget)]
    leaf_budget: usize,
    /// Smallest branching width.
    #[arg(long, default_value_t = SearchConfig::default().min_width)]
    tol: f64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// No per-graph progress lines.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    search: SearchArgs,
    /// PLANAR_CODE file used instead of generated candidates.
    #[arg(long)]
    seed_graphs: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Skip graphs already in the journal.
    #[arg(long)]
    resume: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axis {
    X,
    Y,
    Z,
}

const EXIT_MISMATCH: u8 = 2;
const EXIT_UNRESOLVED: u8 = 3;

fn run_config(n: usize, s: &SearchArgs, out: PathBuf) -> RunConfig {
    RunConfig {
        max_level: s.max_level,
        leaf_budget: s.leaf_budget,
        min_width: s.tol,
        jobs: s.jobs,
        verbose: !s.quiet,
        ..RunConfig::new(n, out)
    }
}

fn summary(c: &Catalog) -> ExitCode {
    println!(
        "n={} candidates={} embedded={} unresolved={} pruned={}",
        c.meta.n,
        c.meta.candidates,
        c.embedded().count(),
        c.meta.unresolved,
        c.meta.pruned
    );
    if c.meta.unresolved > 0 {
        ExitCode::from(EXIT_UNRESOLVED)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode, PipelineError> {
    match cli.cmd {
        Cmd::Gen { n, out } => {
            let set = generate_candidates(n)?;
            std::fs::write(&out, write_planar_code(&set.graphs))?;
            println!("n={n} candidates={} underlying={}", set.graphs.len(), set.underlying);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Enumerate(a) => {
            let cfg = RunConfig {
                seed_graphs: a.seed_graphs,
                resume: a.resume,
                ..run_config(a.n, &a.search, a.out)
            };
            Ok(summary(&enumerate(&cfg)?))
        }
        Cmd::Certify { catalog, search, out } => {
            let old = Catalog::read(&catalog)?;
            let cfg = run_config(old.meta.n, &search, out.clone());
            cfg.validate()?;
            let new = recertify(&old, &cfg)?;
            new.write(&out)?;
            Ok(summary(&new))
        }
        Cmd::Verify { catalog, reference } => {
            let c = Catalog::read(&catalog)?;
            let rows = load_reference(reference.as_deref())?;
            let report = verify_reference(&c, &rows);
            print!("{report}");
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            })
        }
        Cmd::Export { catalog, out, view_axis } => {
            let c = Catalog::read(&catalog)?;
            let view = match view_axis {
                Axis::X => ViewAxis::X,
                Axis::Y => ViewAxis::Y,
                Axis::Z => ViewAxis::Z,
            };
            let files = export_svg(&c, &out, &ExportOptions { view })?;
            println!("wrote {} files to {}", files.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
