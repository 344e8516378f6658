//! Monte Carlo benchmark harness for Signal Space CoSaMP.
//!
//! Sweeps over the number of measurements, projection-quality studies and
//! D-RIP diagnostics, all seeded from a single master seed and written as
//! long-format CSV or JSON.

pub mod cli;
pub mod config;
pub mod error;
pub mod format;
pub mod recover;
pub mod scenario;
pub mod study;
pub mod sweep;

pub use config::{Algorithm, ConfigError, KeyValues, Scenario, SweepConfig};
pub use error::{BenchError, BenchResult};
pub use sweep::{run_sweep, SweepOptions, SweepResult};
