//! Parses a code description and prints the full analysis report.
//!
//! `cargo run --example analyze_config -- crates/core/corpus/q2_m9_full.qcc`

use qcweights::cli::{self, AnalysisConfig};

const DEFAULT: &str = "\
code q=2 m=15 l=2
constituent coset=3
row 0 | g
constituent coset=5
row g | 0
";

fn main() -> qcweights::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path)
            .map_err(|e| qcweights::Error::InvalidInput(format!("{path}: {e}")))?,
        None => DEFAULT.to_string(),
    };
    let spec = cli::parse_config(&text)?;
    let report = cli::analyze(spec, &AnalysisConfig::default())?;
    print!("{}", cli::render_text(&report));
    Ok(())
}
