// Drives the same sweep machinery as the `sim` binary from an inline
// scenario and writes the CSV table to stdout.

use std::error::Error;
use std::io;

use dressed_interference::scan::{run_scan_eta, OutputFormat, Scenario};

const SCENARIO: &str = r#"{
  "drive": { "rabi": 100.0, "detuning": 0.0 },
  "reservoir": { "kind": "flat", "gamma0": 1.0 },
  "coupling": "off",
  "geometry": { "k_r_over_pi": 20.0 },
  "scan": { "axis": "eta", "min": 0.01, "max": 100.0, "points": 9, "spacing": "log" }
}"#;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let scenario = Scenario::from_json(SCENARIO)?;
    let table = run_scan_eta(&scenario)?;
    let header = vec!["inline eta sweep".to_string()];
    table.write(&mut io::stdout().lock(), &header, OutputFormat::Csv)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
