use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use osg_rabi::entanglement;
use osg_rabi::grid::{self, PotentialKind};
use osg_rabi::params::ConfigFile;
use osg_rabi::report::{self, Engine, Scenario, Table};
use osg_rabi::Error;

/// Rabi-oscillation damping in the one-excitation optical Stern-Gerlach model.
///
/// Tables are CSV on stdout (or --out). Times are in units of 1/ε.
#[derive(Parser)]
#[command(name = "osg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Momentum distribution at a list of interaction times.
    MomentumDist {
        #[command(flatten)]
        common: Common,
        /// Comma-separated interaction times.
        #[arg(long, value_delimiter = ',')]
        taus: Option<Vec<f64>>,
        #[arg(long)]
        q_min: Option<f64>,
        #[arg(long)]
        q_max: Option<f64>,
        #[arg(long)]
        n_q: Option<usize>,
        /// Write the final grid state (grid engines only).
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
    /// Excited-state population, visibility and distinguishability.
    Rabi {
        #[command(flatten)]
        common: Common,
    },
    /// Horodecki CHSH quantity M(ρ), closed form and brute force.
    Bell {
        #[command(flatten)]
        common: Common,
    },
    /// Partial-transpose spectrum and threshold separability time.
    Separability {
        #[command(flatten)]
        common: Common,
        /// Threshold δ on |⟨φ⁻|φ⁺⟩|.
        #[arg(long)]
        sep_threshold: Option<f64>,
    },
    /// Visibility/distinguishability pair and the duality residual.
    Complementarity {
        #[command(flatten)]
        common: Common,
    },
    /// Grid-oracle checks and convergence study.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Bell and separability criteria for a density matrix read from a file.
    Criteria {
        /// 32 numbers: real and imaginary parts of the 4×4 entries, row-major.
        #[arg(long)]
        density: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Common {
    /// TOML file with physical parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    mass_kg: Option<f64>,
    #[arg(long)]
    wavelength_m: Option<f64>,
    #[arg(long)]
    epsilon_per_s: Option<f64>,
    #[arg(long)]
    delta_x0_over_lambda: Option<f64>,
    #[arg(long)]
    x0_over_lambda: Option<f64>,
    #[arg(long)]
    p0_over_hbar_k: Option<f64>,
    /// Final time in units of 1/ε.
    #[arg(long)]
    tau_max: Option<f64>,
    #[arg(long)]
    tau_step: Option<f64>,
    /// analytic, grid or both.
    #[arg(long)]
    engine: Option<Engine>,
    /// linear, sinusoidal or free (grid engine).
    #[arg(long)]
    potential: Option<PotentialKind>,
    #[arg(long)]
    n_points: Option<usize>,
    /// Grid half width in units of 1/k around the packet center.
    #[arg(long)]
    half_width: Option<f64>,
    #[arg(long)]
    d_tau: Option<f64>,
    /// CSV destination instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a JSON summary on stdout (the CSV then goes only to --out).
    #[arg(long)]
    json: bool,
}

impl Common {
    fn scenario(&self) -> Result<Scenario, Error> {
        let mut file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        macro_rules! overlay {
            ($($field:ident),*) => { $( if self.$field.is_some() { file.$field = self.$field; } )* };
        }
        overlay!(
            mass_kg,
            wavelength_m,
            epsilon_per_s,
            delta_x0_over_lambda,
            x0_over_lambda,
            p0_over_hbar_k
        );
        if self.tau_max.is_some() {
            file.t_max_epsilon_units = self.tau_max;
        }
        let mut s = Scenario {
            config: file.to_physical(),
            ..Scenario::default()
        };
        if let Some(v) = self.tau_step {
            s.tau_step = v;
        }
        if let Some(v) = self.engine {
            s.engine = v;
        }
        if let Some(v) = self.potential {
            s.potential = v;
        }
        if let Some(v) = self.n_points {
            s.grid.n_points = v;
        }
        if let Some(v) = self.half_width {
            s.grid.half_width = v;
        }
        if let Some(v) = self.d_tau {
            s.grid.d_tau = v;
        }
        Ok(s)
    }

    fn emit(&self, table: &Table) -> Result<(), Error> {
        if let Some(path) = &self.out {
            std::fs::write(path, table.to_csv())?;
        } else if !self.json {
            stdout(&table.to_csv())?;
        }
        if self.json {
            stdout(&(table.summary_json() + "\n"))?;
        }
        Ok(())
    }
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as success.
fn stdout(text: &str) -> Result<(), Error> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::MomentumDist {
            common,
            taus,
            q_min,
            q_max,
            n_q,
            snapshot,
        } => {
            let mut s = common.scenario()?;
            if let Some(t) = taus {
                s.taus = t;
            }
            s.q_min = q_min.unwrap_or(s.q_min);
            s.q_max = q_max.unwrap_or(s.q_max);
            s.n_q = n_q.unwrap_or(s.n_q);
            let (table, state) = report::cmd_momentum_dist(&s)?;
            common.emit(&table)?;
            match (snapshot, state) {
                (Some(path), Some(state)) => grid::write_snapshot(&path, &state)?,
                (Some(_), None) => {
                    return Err(Error::Config("--snapshot needs --engine grid or both".into()))
                }
                _ => {}
            }
        }
        Command::Rabi { common } => common.emit(&report::cmd_rabi(&common.scenario()?)?)?,
        Command::Bell { common } => common.emit(&report::cmd_bell(&common.scenario()?)?)?,
        Command::Complementarity { common } => {
            common.emit(&report::cmd_complementarity(&common.scenario()?)?)?
        }
        Command::Separability {
            common,
            sep_threshold,
        } => {
            let mut s = common.scenario()?;
            s.sep_threshold = sep_threshold.unwrap_or(s.sep_threshold);
            common.emit(&report::cmd_separability(&s)?)?;
        }
        Command::Validate { common } => {
            let r = report::cmd_validate(&common.scenario()?)?;
            let text = if common.json { r.to_json() + "\n" } else { r.to_text() };
            match &common.out {
                Some(path) => std::fs::write(path, &text)?,
                None => stdout(&text)?,
            }
            if !r.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Criteria { density, json } => {
            let rho = entanglement::read_density(&density)?;
            let bell = entanglement::horodecki_m(&rho)?;
            let sep = entanglement::separability_test(&rho);
            let text = if json {
                let v = serde_json::json!({
                    "m_value": bell.m_value,
                    "violates_chsh": bell.violates_chsh,
                    "lambda1": bell.lambda1,
                    "lambda2": bell.lambda2,
                    "min_pt_eigenvalue": sep.min_pt_eigenvalue,
                    "ppt_separable": sep.separable,
                });
                serde_json::to_string_pretty(&v).expect("JSON serialization") + "\n"
            } else {
                format!(
                    "M={}\nviolates_chsh={}\nmin_pt_eigenvalue={}\nppt_separable={}\n",
                    report::fmt_num(bell.m_value),
                    bell.violates_chsh,
                    report::fmt_num(sep.min_pt_eigenvalue),
                    sep.separable
                )
            };
            stdout(&text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Grid(_) | Error::OverlapOutOfRange(_) => 1,
                _ => 2,
            })
        }
    }
}
