use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use jcm_negativity::sweep::{
    emit_csv, resolve_config, run_sweep, write_csv, ConfigOverrides, Preset,
};
use jcm_negativity::Error;

const EXIT_CONFIG: u8 = 1;
const EXIT_ORACLE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Sweep the negativity, entropies and mutual entropy of the Jaynes-Cummings
/// model over a time grid and write them as CSV.
#[derive(Debug, Parser)]
#[command(name = "jcm-sim", version)]
struct Cli {
    /// Flat `key = value` config file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Reference parameter set: fig1, fig2, fig3, fig4 or fig5.
    #[arg(long)]
    preset: Option<Preset>,

    /// Coherent amplitude modulus |alpha|.
    #[arg(long, conflicts_with = "alpha_squared")]
    alpha: Option<f64>,

    /// Mean photon number |alpha|^2.
    #[arg(long)]
    alpha_squared: Option<f64>,

    /// Coherent amplitude phase in radians.
    #[arg(long, allow_negative_numbers = true)]
    alpha_phase: Option<f64>,

    /// Atom-field coupling.
    #[arg(long)]
    g: Option<f64>,

    /// Atomic transition frequency.
    #[arg(long, allow_negative_numbers = true)]
    omega_a: Option<f64>,

    /// Detuning omega_A - omega_F.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,

    /// Initial weight of the atomic ground state, in [0, 1].
    #[arg(long)]
    atom_ground_weight: Option<f64>,

    /// First time sample (default 0).
    #[arg(long)]
    t_start: Option<f64>,

    /// Last time sample, included (default 25).
    #[arg(long)]
    t_end: Option<f64>,

    /// Number of time samples (default 1001).
    #[arg(long)]
    n_points: Option<usize>,

    /// Photon-number probability allowed above the Fock cutoff.
    #[arg(long)]
    tail_tolerance: Option<f64>,

    /// Extra Fock levels kept above the cutoff.
    #[arg(long)]
    buffer: Option<usize>,

    /// Cross-validate against the brute-force propagator.
    #[arg(long)]
    oracle_check: bool,

    /// Check every k-th grid point when --oracle-check is set.
    #[arg(long)]
    oracle_stride: Option<usize>,

    /// Output CSV path; `-` writes to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Cli {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            preset: self.preset,
            alpha: self.alpha,
            alpha_squared: self.alpha_squared,
            alpha_phase: self.alpha_phase,
            g: self.g,
            omega_a: self.omega_a,
            delta: self.delta,
            atom_ground_weight: self.atom_ground_weight,
            t_start: self.t_start,
            t_end: self.t_end,
            n_points: self.n_points,
            tail_tolerance: self.tail_tolerance,
            buffer: self.buffer,
            oracle_check: self.oracle_check.then_some(true),
            oracle_stride: self.oracle_stride,
            output: self.output.clone(),
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::OracleMismatch { .. } => EXIT_ORACLE,
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let file = cli
        .config
        .as_deref()
        .map(ConfigOverrides::from_file)
        .transpose()?;
    let config = resolve_config(file.as_ref(), &cli.overrides())?;
    let records = run_sweep(&config)?;

    if config.output_path.as_os_str() == "-" {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        write_csv(&records, &mut lock)
            .and_then(|_| lock.flush())
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
    } else {
        emit_csv(&records, &config.output_path)?;
        eprintln!(
            "wrote {} records to {}",
            records.len(),
            config.output_path.display()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
