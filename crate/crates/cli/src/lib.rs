//! Library side of the `bounds` command-line tool.
//!
//! Each subcommand is a plain function returning data ([`format::Table`],
//! a JSON value or an [`sdp_check::SdpCheckReport`]); `main` only parses
//! arguments, writes the output and maps failures to exit codes.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x <= tol)` also rejects NaN

pub mod figure;
pub mod format;
pub mod report;
pub mod sdp_check;
pub mod state_file;
pub mod states;
pub mod sweep;

pub use figure::{run_figure, FIGURE_IDS};
pub use format::{Cell, Format, Table};
pub use report::run_report;
pub use sdp_check::{run_sdp_check, Budget, SdpCheckConfig, SdpCheckReport};
pub use state_file::{load_state_file, StateFile, StateFileError};
pub use states::{StateSpec, NAMED_STATES};
pub use sweep::{run_sweep, SweepConfig, COLUMNS};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for usage and validation errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit code when a solve does not converge or cannot be certified.
pub const EXIT_SOLVER: i32 = 2;
