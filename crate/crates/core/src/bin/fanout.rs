use clap::Parser;

fn main() {
    let cli = fanout::cli::Cli::parse();
    std::process::exit(fanout::cli::run(cli));
}
