//! Binary entry point: parse arguments, run, and translate the result into
//! the documented exit codes (clap handles usage errors with code 2 itself).

use clap::Parser;

fn main() {
    let cli = fracops_cli::Cli::parse();
    std::process::exit(fracops_cli::run(cli));
}
