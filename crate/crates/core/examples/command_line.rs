//! Drives the same pipeline as the `limit-roots` binary from code and lists
//! the files it writes.
//!
//! cargo run --release --example command_line

use clap::Parser;
use limit_roots::cli::{run, Cli};

fn main() {
    let dir = std::env::temp_dir().join("limit-roots-example");
    let spec = dir.join("spec.json");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        &spec,
        limit_roots::fixtures::one_infinite(-1.5).spec.to_json(),
    )
    .unwrap();
    for cmd in ["analyze", "limitset", "orbit", "plotscript"] {
        let args = [
            "limit-roots",
            cmd,
            "--spec",
            spec.to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
            "--max-depth",
            "12",
            "--samples",
            "3000",
            "--max-word-len",
            "6",
        ];
        let cli = Cli::parse_from(args);
        let written = run(cli.command, &cli.config).unwrap();
        for path in written {
            println!("{cmd:<10} wrote {}", path.display());
        }
    }
}
