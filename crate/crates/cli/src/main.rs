use std::io::Write;

use clap::Parser;
use periodkit_cli::commands::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (value, code) = match run(&cli) {
        Ok(v) => (v, 0),
        Err(e) => (e.to_json(), 1),
    };
    let text = serde_json::to_string_pretty(&value).expect("json");
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    std::process::exit(code);
}
