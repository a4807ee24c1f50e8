use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ottoband_cli::commands::{cmd_cycle, cmd_fig3, cmd_sweep, cmd_verify, CliError};
use ottoband_cli::config::OutputFormat;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

/// Thermodynamics of a four-stroke heat engine with a bound level plus a
/// flat band as its working medium. Energies are in units of KT_cold = 1.
#[derive(Parser)]
#[command(name = "ottoband", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one cycle and print its branch ledgers, net work,
    /// heat totals and efficiency.
    Cycle {
        /// JSON configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Also write the result to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format for --out (overrides the config's `format`).
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Sweep the configured axes and write a net-work/efficiency grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the work-difference surface over the two broadening axes
    /// (net work minus its equal-broadening reduction).
    Fig3 {
        /// JSON configuration file (defaults when omitted).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the oracle battery (seeded, reproducible) plus the
    /// configured-point verification and write a JSON report.
    Verify {
        /// JSON configuration file (defaults when omitted).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Battery seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of random parameter sets.
        #[arg(long, default_value_t = 1000)]
        samples: u32,
        /// Report path (default verify_report.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Cycle {
            config,
            out,
            format,
        } => cmd_cycle(config, out.as_deref(), format.map(Into::into)),
        Command::Sweep { config, out } => cmd_sweep(config, out),
        Command::Fig3 { config, out } => cmd_fig3(config.as_deref(), out),
        Command::Verify {
            config,
            seed,
            samples,
            out,
        } => cmd_verify(config.as_deref(), *seed, *samples, out.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            match error {
                CliError::Verification(_) => ExitCode::from(1),
                CliError::Config(_) => ExitCode::from(2),
            }
        }
    }
}
