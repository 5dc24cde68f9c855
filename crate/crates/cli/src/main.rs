use clap::Parser;

fn main() {
    let cli = udiscord_cli::Cli::parse();
    std::process::exit(udiscord_cli::run(cli));
}
