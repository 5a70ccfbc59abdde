//! Sweeps, figure datasets and oracle checks on top of `qed-spectator`.

pub mod check;
pub mod config;
pub mod error;
pub mod state_spec;
pub mod sweep;

pub use config::RunConfig;
pub use error::CliError;
pub use state_spec::StateSpec;
pub use sweep::{run_figures, run_sweep, Dataset};
