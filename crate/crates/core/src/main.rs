use std::process::exit;

use clap::Parser;

use qtown::cli::{self, Cli};

fn main() {
    let args = Cli::parse();
    match cli::run(args) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(cli::exit_code_for(&e));
        }
    }
}
