//! Experiment harness and command-line front end for `agdec`.

pub mod commands;
pub mod config;
pub mod experiment;
pub mod output;
pub mod selftest;
