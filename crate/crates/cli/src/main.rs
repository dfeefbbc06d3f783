//! `stratalloc`: solve, verify and brute-force stratified allocation problems
//! from CSV or JSON strata tables.
//!
//! Exit codes: 0 success, 1 infeasible problem, 2 invalid input, 3 allocation
//! rejected by `verify`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process;

use clap::Parser;

mod args;
mod commands;
mod error;
mod input;
mod problem;
mod report;

use args::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Verify(args) => commands::verify(args),
        Command::Oracle(args) => commands::oracle(args),
    };
    process::exit(code);
}
