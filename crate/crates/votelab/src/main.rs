use clap::Parser;
use votelab::cli::{self, Cli};

fn main() {
    let args = Cli::parse();
    if let Err(e) = run(args) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn run(args: Cli) -> votelab::Result<()> {
    let manifest = cli::parse_manifest(args)?;
    let report = cli::execute(&manifest)?;
    cli::write_report(&report, &manifest)
}
