//! Builds a quasi-cyclic code from constituents and enumerates its weights.

use qcweights::code::{ConstituentSpec, QccSpec, QuasiCyclicCode, RowEntry, DEFAULT_ENUM_LIMIT};

fn main() -> qcweights::Result<()> {
    // q = 3, m = 26, l = 2; rows [1, g] on coset 1 and [0, g] on coset 13.
    let spec = QccSpec {
        q: 3,
        m: 26,
        l: 2,
        constituents: vec![
            ConstituentSpec {
                coset_rep: 1,
                rows: vec![vec![RowEntry::Poly(vec![1]), RowEntry::Generator]],
            },
            ConstituentSpec {
                coset_rep: 13,
                rows: vec![vec![RowEntry::Zero, RowEntry::Generator]],
            },
        ],
    };
    let code = QuasiCyclicCode::build(spec, 1)?;
    println!("length {}, dimension {}, {} codewords", code.length(), code.dimension(), code.size());
    for c in code.constituents() {
        println!("  coset {:?}: K_t = {}", c.coset.members, c.dimension());
    }
    let wd = code.weight_distribution(DEFAULT_ENUM_LIMIT)?;
    for (w, count) in &wd.counts {
        println!("  weight {w:>2}: {count}");
    }
    println!("nonzero weights: {}", wd.nonzero_weights().len());
    Ok(())
}
