//! Scenario registry, run configuration, identity suites, residual sweeps and gauge
//! checks, with JSON reports.

pub mod config;
mod error;
pub mod gauge_check;
pub mod identities;
pub mod report;
pub mod residuals;
pub mod sampling;
pub mod scenario;

pub use config::{RunConfig, Settings};
pub use error::CliError;
pub use gauge_check::run_gauge_check;
pub use identities::run_identities;
pub use report::{Report, Verdict};
pub use residuals::run_residuals;
pub use scenario::{build_scenario, list_scenarios, ScenarioInfo};
