//! File formats, reports and the `incalg` command line on top of
//! `incalg-core`.

pub mod cli;
pub mod format;
pub mod report;
