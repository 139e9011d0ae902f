use clap::Parser;

use lefkit_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (result, log) = run(&cli);
    for line in log {
        eprintln!("{line}");
    }
    match result {
        Ok(out) => print!("{out}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
