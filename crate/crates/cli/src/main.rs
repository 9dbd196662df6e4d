use clap::{CommandFactory, FromArgMatches};
use polyzeta_cli::{dispatch, Cli};

fn main() {
    let matches = Cli::command().get_matches();
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    if let Err(e) = dispatch(&cli, &matches) {
        eprintln!("polyzeta: {e}");
        std::process::exit(e.exit_code());
    }
}
