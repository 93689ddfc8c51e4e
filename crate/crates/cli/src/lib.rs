//! Command-line front end for `folforge-core`: the `construct`, `verify`,
//! `betti`, `singular` and `sweep` subcommands as functions returning a
//! [`Report`], so they can be tested without spawning processes.

pub mod commands;
pub mod sweep;

pub use commands::{
    betti, construct, parse_field, parse_order, singular, verify, Options, Report, EXIT_CHECK_FAILED, EXIT_INVALID,
    EXIT_NO_FOLIATION, EXIT_OK,
};
pub use sweep::{parse_sweep_spec, sweep, SweepReport, SweepSpec};
