//! q-cyclotomic cosets modulo m, and the multiplicative order m'.

use qcweights::numth;

fn main() -> qcweights::Result<()> {
    for (q, m) in [(2, 9), (2, 15), (3, 26), (4, 11), (9, 91)] {
        let order = numth::multiplicative_order(q, m)?;
        println!("q = {q}, m = {m}: m' = {order}");
        for c in numth::cyclotomic_cosets(q, m)? {
            println!("  C_{:<3} size {:<2} {:?}", c.rep, c.size(), c.members);
        }
    }
    Ok(())
}
