//! Argument parsing and dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hubbard_swap::dynamics::{fidelity_trace, labeled_levels};
use hubbard_swap::model::{ChainSpec, HoppingSign};
use hubbard_swap::scan::{
    default_u_max, find_peaks, reproduce_four_site_peaks, reproduce_leading_peaks, scan_u_with, DEFAULT_DU, DEFAULT_T_MAX,
};
use serde::Serialize;

use crate::error::CliError;
use crate::format::{to_json, CsvTable};
use crate::parallel::PoolSweeper;
use crate::report::{ComparisonTable, PeaksReport, SpectrumReport, SweepReport, TraceReport};
use crate::verify::verify;

#[derive(Debug, Parser)]
#[command(name = "hubbard-swap", version, about = "Two-electron swap through an engineered Hubbard chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file (directory for `tables`); stdout when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, global = true, env = "HUBBARD_SWAP_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Positive,
    Negative,
}

impl From<Sign> for HoppingSign {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Positive => HoppingSign::Positive,
            Sign::Negative => HoppingSign::Negative,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every eigenlevel with its mirror parity, sector L and weight in the start state.
    Spectrum(ChainArgs),
    /// Swap fidelity F(t) on a uniform time grid.
    Trace {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, default_value_t = DEFAULT_T_MAX, allow_negative_numbers = true)]
        t_max: f64,
        #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
        dt: f64,
    },
    /// Best fidelity and revival time over a grid of U.
    Sweep(SweepArgs),
    /// Regular peaks of F_max(U), refined in U.
    Peaks {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Report grid maxima without refinement.
        #[arg(long)]
        no_refine: bool,
    },
    /// Reproduce the reference optimum tables (writes four_site_peaks and leading_peaks).
    Tables,
    /// Run the invariant suite; exits 3 when any check fails.
    Verify,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// Number of sites.
    #[arg(long)]
    pub n: usize,
    /// On-site interaction.
    #[arg(long, allow_negative_numbers = true)]
    pub u: f64,
    #[arg(long, value_enum, default_value_t = Sign::Positive)]
    pub sign: Sign,
}

impl ChainArgs {
    fn spec(&self) -> Result<ChainSpec, CliError> {
        Ok(ChainSpec::new(self.n, self.u)?.with_sign(self.sign.into()))
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub u_min: f64,
    /// Defaults to 4N.
    #[arg(long, allow_negative_numbers = true)]
    pub u_max: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_DU, allow_negative_numbers = true)]
    pub du: f64,
    #[arg(long, default_value_t = DEFAULT_T_MAX, allow_negative_numbers = true)]
    pub t_max: f64,
}

fn emit<T: Serialize>(value: &T, csv: impl FnOnce(&T) -> CsvTable, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let text = match format {
        Format::Csv => csv(value).render(),
        Format::Json => to_json(value),
    };
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Output { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let out = cli.output.as_deref();
    let format = cli.format;
    match &cli.command {
        Command::Spectrum(chain) => {
            let spec = chain.spec()?;
            let levels = labeled_levels(&spec)?;
            let report = SpectrumReport::new(spec.n_sites, spec.onsite_u, spec.hopping_sign.value() as i8, &levels);
            emit(&report, SpectrumReport::csv, format, out)
        }
        Command::Trace { chain, t_max, dt } => {
            let trace = fidelity_trace(&chain.spec()?, *t_max, *dt)?;
            emit(&TraceReport::from(&trace), TraceReport::csv, format, out)
        }
        Command::Sweep(args) => {
            let curve = sweep(args, cli.jobs)?;
            emit(&SweepReport::from(&curve), SweepReport::csv, format, out)
        }
        Command::Peaks { sweep: args, no_refine } => {
            let curve = sweep(args, cli.jobs)?;
            let peaks = find_peaks(&curve, !no_refine)?;
            emit(&PeaksReport::new(curve.n_sites, curve.t_max, &peaks), PeaksReport::csv, format, out)
        }
        Command::Tables => {
            let sweeper = PoolSweeper::new(cli.jobs)?;
            let dir = out.unwrap_or(Path::new("."));
            fs::create_dir_all(dir).map_err(|source| CliError::Output { path: dir.to_path_buf(), source })?;
            let (_, rows1) = reproduce_four_site_peaks(&sweeper)?;
            let rows2 = reproduce_leading_peaks(&sweeper)?;
            for (name, rows) in [("four_site_peaks", rows1), ("leading_peaks", rows2)] {
                let path = dir.join(format!("{name}.{}", format.extension()));
                emit(&ComparisonTable::new(&rows), ComparisonTable::csv, format, Some(&path))?;
            }
            Ok(())
        }
        Command::Verify => {
            let report = verify()?;
            emit(&report, |r| r.csv(), format, out)?;
            let failed = report.failures().count();
            for c in report.failures() {
                eprintln!("FAIL {}: {:e} (bound {:e})", c.name, c.measured, c.bound);
            }
            if failed > 0 {
                return Err(CliError::Verification { failed, total: report.checks.len() });
            }
            Ok(())
        }
    }
}

fn sweep(args: &SweepArgs, jobs: Option<usize>) -> Result<hubbard_swap::scan::SweepCurve, CliError> {
    let u_max = args.u_max.unwrap_or_else(|| default_u_max(args.n));
    let sweeper = PoolSweeper::new(jobs)?;
    Ok(scan_u_with(&sweeper, args.n, args.u_min, u_max, args.du, args.t_max)?)
}
