//! The `octopara` command-line tool: property verification, decomposition,
//! polarization, functional calculus, adjoints and norms of operator files.

pub mod commands;
pub mod report;
pub mod suites;
