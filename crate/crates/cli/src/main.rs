use clap::Parser;
use sthg_cli::commands::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = sthg_cli::init_threads().and_then(|()| run(cli)) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
