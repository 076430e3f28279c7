//! Command-line tools, subgroup catalogs and JSON reports on top of
//! [`permrel_core`].

pub mod catalog;
pub mod cli;
pub mod config;
pub mod report;

pub use permrel_core as core;
