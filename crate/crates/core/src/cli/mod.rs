//! Library side of the `qcw` command line tool.

pub mod config;
pub mod report;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numth;

pub use config::parse_config;
pub use report::{analyze, bounds_only, render_text, AnalysisConfig, BoundReport};

/// Output of `qcw cosets`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub q: u64,
    pub m: u64,
    pub m_prime: u64,
    pub cosets: Vec<report::CosetInfo>,
}

pub fn coset_table(q: u64, m: u64) -> Result<CosetTable> {
    if numth::prime_power(q).is_none() {
        return Err(crate::Error::invalid(format!("q = {q} is not a prime power")));
    }
    let m_prime = numth::multiplicative_order(q, m)?;
    let cosets = numth::cyclotomic_cosets(q, m)?
        .into_iter()
        .map(|c| report::CosetInfo {
            rep: c.rep,
            size: c.size(),
            members: c.members,
        })
        .collect();
    Ok(CosetTable { q, m, m_prime, cosets })
}

pub fn render_cosets(t: &CosetTable) -> String {
    let mut out = format!("q={} m={} m'={} cosets={}\n", t.q, t.m, t.m_prime, t.cosets.len());
    for c in &t.cosets {
        let members: Vec<String> = c.members.iter().map(u64::to_string).collect();
        out.push_str(&format!("C_{} (size {}): {{{}}}\n", c.rep, c.size, members.join(", ")));
    }
    out
}
