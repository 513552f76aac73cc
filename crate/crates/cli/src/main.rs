use clap::Parser;
use kgpdm_cli::args::Cli;

fn main() {
    // clap exits with 2 on usage errors and 0 for --help / --version
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    if let Err(e) = kgpdm_cli::run(&cli) {
        eprintln!("kgpdm: {e}");
        std::process::exit(e.exit_code());
    }
}
