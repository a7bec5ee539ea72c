//! File formats, output writers and the command-line front end for
//! `svpfold-core`.

pub mod angle;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
