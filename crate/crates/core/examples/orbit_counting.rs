//! Orbit counts of the three groups, by explicit partition and by Burnside's
//! lemma, and whether equal weights imply equal orbits.

use qcweights::code::{ConstituentSpec, QccSpec, QuasiCyclicCode, RowEntry};
use qcweights::group::{self, GroupKind};

fn main() -> qcweights::Result<()> {
    let spec = QccSpec {
        q: 4,
        m: 11,
        l: 2,
        constituents: vec![ConstituentSpec {
            coset_rep: 1,
            rows: vec![vec![RowEntry::Zero, RowEntry::Generator]],
        }],
    };
    let code = QuasiCyclicCode::build(spec, 1)?;
    let limit = 1 << 16;
    let weights = code.weights(limit)?;
    for kind in GroupKind::ALL {
        group::check_closure(&code, kind)?;
        let partition = group::orbit_partition(&code, kind, limit)?;
        let burnside = group::burnside_count(&code, kind)?;
        println!(
            "{kind:<12} order {:>3}: {} orbits (Burnside: {burnside}), weights determine orbits: {}",
            kind.order(code.ctx()),
            partition.count,
            group::tightness_check(&weights, &partition)
        );
    }
    Ok(())
}
