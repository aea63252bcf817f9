//! Command-line harness: graph files, experiment configuration, learner
//! runs with bound checks, and machine-readable reports.

pub mod config;
pub mod graphfile;
pub mod report;
pub mod runner;
pub mod verify;
