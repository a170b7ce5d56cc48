//! Loading a configuration file and producing the CSV tables of the CLI.
//!
//!     cargo run --example scenario_tables -- my_config.toml

use osg_rabi::params::ConfigFile;
use osg_rabi::report::{self, Scenario};

fn main() -> osg_rabi::Result<()> {
    let file = match std::env::args().nth(1) {
        Some(path) => ConfigFile::load(path.as_ref())?,
        None => ConfigFile::parse("x0_over_lambda = 0.1\nt_max_epsilon_units = 20.0\n")?,
    };
    let scenario = Scenario {
        config: file.to_physical(),
        tau_step: 0.5,
        ..Scenario::default()
    };
    let rabi = report::cmd_rabi(&scenario)?;
    print!("{}", rabi.to_csv());
    let sep = report::cmd_separability(&scenario)?;
    println!("t_sep = {}", sep.summary_value("t_sep").unwrap_or("none"));
    println!("{}", report::cmd_bell(&scenario)?.summary_json());
    Ok(())
}
