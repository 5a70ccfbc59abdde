use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qed_spectator_cli::{check::run_check, run_figures, run_sweep, CliError, RunConfig};

#[derive(Parser)]
#[command(name = "qed-spectator", version, about = "Spectator spin observables for e+e- -> mu+mu-")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one state over an energy (and angle) grid and write CSV.
    Sweep(Overrides),
    /// Write the fig2.csv ... fig9.csv datasets into a directory.
    Figures(Overrides),
    /// Compare the main assembly with the brute-force oracle.
    Check {
        #[arg(long, default_value_t = 100)]
        states: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        quad: usize,
    },
}

#[derive(Args)]
struct Overrides {
    /// JSON file with RunConfig keys; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// ghz | w | a-psi[:+|:-] | a-phi[:+|:-] | general:<8 complex> | bc-mixture:<4 complex>
    #[arg(long)]
    state: Option<String>,
    /// Lowest energy in muon masses.
    #[arg(long)]
    emin: Option<f64>,
    #[arg(long)]
    emax: Option<f64>,
    /// Number of energy points.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long)]
    alpha_max: Option<f64>,
    #[arg(long)]
    alpha_steps: Option<usize>,
    /// Bell sign when the state tag has none: + (eta = pi/4) or - (eta = 3pi/4).
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Quadrature order in cos(theta) and phi.
    #[arg(long)]
    quad: Option<usize>,
    /// Output file (sweep) or directory (figures).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Overrides {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($flag:ident => $field:ident),*) => { $(if let Some(v) = self.$flag { cfg.$field = v; })* };
        }
        set!(state => state, emin => e_min, emax => e_max, steps => e_steps, alpha_min => alpha_min,
             alpha_max => alpha_max, alpha_steps => alpha_steps, eta => eta, quad => quad_order);
        if self.out.is_some() {
            cfg.out = self.out;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(o) => {
            let cfg = o.resolve()?;
            let data = run_sweep(&cfg)?;
            match &cfg.out {
                Some(path) => data.write(path)?,
                None => print!("{}", data.to_csv()),
            }
        }
        Command::Figures(o) => {
            let cfg = o.resolve()?;
            let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
            for path in run_figures(&cfg, &dir)? {
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Check { states, seed, quad } => {
            let report = run_check(states, seed, quad)?;
            println!(
                "dual path: {} comparisons, max density difference {:e}",
                report.comparisons, report.max_density_diff
            );
            println!("spin sums vs trace theorem: max relative error {:e}", report.max_spin_sum_rel_err);
            println!("ok");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
