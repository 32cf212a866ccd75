use clap::Parser;

fn main() {
    let cli = multlab::cli::Cli::parse();
    if let Err(e) = multlab::cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
