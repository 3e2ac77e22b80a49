//! Runs one CLI subcommand in-process and prints the report as text.
//!
//! cargo run --example report -- [identities|dims|basis|boundary|invariants|drinfeld|strata|cuspdims|report]

use recipmaps::cli::{execute, render, Command, Format, RunConfig};

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "dims".into());
    let command = match which.as_str() {
        "identities" => Command::Identities,
        "dims" => Command::Dims,
        "basis" => Command::Basis,
        "boundary" => Command::Boundary,
        "invariants" => Command::Invariants,
        "drinfeld" => Command::Drinfeld,
        "strata" => Command::Strata,
        "cuspdims" => Command::Cuspdims,
        "report" => Command::Report,
        other => panic!("unknown subcommand {other}"),
    };
    let config = RunConfig { format: Format::Text, ..RunConfig::default() };
    let doc = execute(command, &config).unwrap();
    print!("{}", render(&doc, command));
}
