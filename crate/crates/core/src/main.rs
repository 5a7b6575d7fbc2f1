use clap::Parser;
use limit_roots::cli::{exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(cli.command, &cli.config) {
        Ok(files) => {
            for f in files {
                eprintln!("wrote {}", f.display());
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
