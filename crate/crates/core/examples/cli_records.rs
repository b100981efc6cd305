//! Drives the command-line layer in-process and reads its line-delimited
//! records back.
//!
//! cargo run --example cli_records

use salagean::cli::{parse_records, run, Command, Record, RunConfig};

fn main() {
    let config = RunConfig { n: 1, ..RunConfig::defaults(Command::Bounds) };
    let mut out = Vec::new();
    let code = run(Command::Bounds, &config, &mut out).expect("valid configuration");
    let text = String::from_utf8(out).expect("utf-8");
    print!("{text}");
    for record in parse_records(&text).expect("records round-trip") {
        if let Record::Bound { functional, variant, bound, .. } = record {
            println!("{} {}: {bound}", functional.key(), variant.as_str());
        }
    }
    println!("exit code {code}");
}
