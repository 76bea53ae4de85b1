//! Library side of the `cohtele` command: single runs, sweeps and verification
//! suites, plus the CSV/JSON writers they share.

pub mod error;
pub mod format;
pub mod run;
pub mod sweep;
pub mod verify;

pub use error::{CliError, ExitCode};
pub use run::{Record, RunParams};
pub use sweep::{SweepParam, SweepSpec};
pub use verify::{Check, Suite, VerificationReport, DEFAULT_SEED};
