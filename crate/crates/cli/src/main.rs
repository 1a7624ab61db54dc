use clap::Parser;

fn main() {
    let cli = decompound_cli::Cli::parse();
    if let Err(e) = decompound_cli::run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
