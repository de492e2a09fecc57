//! Monte Carlo experiments for beamspace user scheduling: parameter
//! sweeps, CSV output, named presets and the acceptance checks behind the
//! `beamsched` command.

pub mod config;
pub mod harness;
pub mod output;
pub mod presets;
pub mod summary;
pub mod verify;
