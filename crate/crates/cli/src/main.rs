use std::io::Write;

use clap::Parser;
use greenseq_cli::{run, Cli};

fn main() -> anyhow::Result<()> {
    let outcome = run(Cli::parse());
    std::io::stdout().write_all(outcome.stdout.as_bytes())?;
    std::io::stderr().write_all(outcome.stderr.as_bytes())?;
    std::process::exit(outcome.code);
}
