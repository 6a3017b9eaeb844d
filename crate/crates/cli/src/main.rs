// SPDX-License-Identifier: Apache-2.0

use clap::Parser;
use optomech_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("optomech: {e}");
        std::process::exit(e.exit_code());
    }
}
