use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dressed_interference::scan::{self, Scenario, ScanResult, SimError, SimResult};
use dressed_interference::validity_check;

#[derive(Parser)]
#[command(name = "sim", version, about = "Strong-field interference of dressed emitters in a structured reservoir")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Steady state, populations and band visibilities at one parameter point.
    Steady(Io),
    /// Central-band visibility versus sideband asymmetry eta.
    ScanEta(Io),
    /// Angular intensity pattern I/N^2 in units of Psi_R/4.
    Pattern(Io),
    /// Second-order correlations (diagonal, map or weak-field).
    G2(Io),
    /// Time evolution of (x, y, z).
    Evolve(Io),
    /// Strong-field and dipole-dipole validity ratios.
    Validate(Io),
    /// Oracle equivalence checks; exit code 3 on failure.
    Verify,
}

#[derive(clap::Args)]
struct Io {
    /// Scenario file (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output file; overrides `output.path`, defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn configure_threads() -> SimResult<()> {
    let Ok(raw) = std::env::var("SIM_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| SimError::Config(format!("SIM_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| SimError::Config(e.to_string()))
}

type Runner = fn(&Scenario) -> SimResult<ScanResult>;

fn run(command: Command) -> SimResult<()> {
    let (name, io, runner): (&str, Io, Runner) = match command {
        Command::Verify => {
            let report = scan::run_verify();
            print!("{}", report.render());
            return match report.failures() {
                0 => Ok(()),
                n => Err(SimError::Verification(n)),
            };
        }
        Command::Steady(io) => ("steady", io, scan::run_steady),
        Command::ScanEta(io) => ("scan-eta", io, scan::run_scan_eta),
        Command::Pattern(io) => ("pattern", io, scan::run_pattern),
        Command::G2(io) => ("g2", io, scan::run_g2),
        Command::Evolve(io) => ("evolve", io, scan::run_evolve),
        Command::Validate(io) => ("validate", io, scan::run_validate),
    };
    let scenario = Scenario::load(&io.config)?;
    warn_regime(&scenario)?;
    let table = runner(&scenario)?;
    let header = vec![
        format!("sim {name} (dressed-interference {})", env!("CARGO_PKG_VERSION")),
        format!("scenario: {}", scenario.to_json()),
    ];
    let path = io.out.or_else(|| scenario.output.path.clone());
    let format = scenario.output.format;
    let write = |out: &mut dyn Write| -> io::Result<()> {
        let mut out = BufWriter::new(out);
        table.write(&mut out, &header, format)?;
        out.flush()
    };
    match path {
        Some(path) => {
            let mut file = File::create(&path).map_err(|source| SimError::Io { path: path.clone(), source })?;
            write(&mut file).map_err(|source| SimError::Io { path, source })
        }
        None => write(&mut io::stdout().lock()).map_err(|source| SimError::Io { path: "<stdout>".into(), source }),
    }
}

fn warn_regime(scenario: &Scenario) -> SimResult<()> {
    let m = scenario.model()?;
    if m.frame.is_dispersive() {
        eprintln!(
            "warning: 2*tilde_omega/omega_L = {:.3e} is not small; sideband wavevectors differ from k_L",
            m.frame.sideband_dispersion()
        );
    }
    if let Ok(report) = validity_check(&m.frame, &m.profile, m.coupling, &m.geometry, scenario.validity_threshold) {
        if !report.strong_field_ok {
            eprintln!("warning: strong-field condition not met (threshold {})", scenario.validity_threshold);
        }
        if report.dipole_dipole_warning {
            eprintln!("warning: k_r < 2*pi; dipole-dipole line splittings are not modelled");
        }
    }
    Ok(())
}
