//! Closed-form orbit counts from constituent data alone.

use qcweights::bounds::{self, ConstituentArith};

fn main() -> qcweights::Result<()> {
    // (coset representative, coset size, F_q-dimension) per constituent.
    let q2m9 = [ConstituentArith::new(0, 1, 1), ConstituentArith::new(1, 6, 6)];
    println!("q=2 m=9:");
    println!("  shift        {:?}", bounds::shift_terms(&q2m9, 9, 2)?);
    println!("  shift-scalar {:?}", bounds::shift_scalar_terms(&q2m9, 9, 2)?);
    println!("  full         {:?}", bounds::full_terms(&q2m9, 9, 2)?);

    let q5m4 = [ConstituentArith::new(1, 1, 1), ConstituentArith::new(2, 1, 1)];
    println!("q=5 m=4:");
    println!("  shift-scalar                  {}", bounds::bound_shift_scalar(&q5m4, 4, 5)?);
    let separate: Vec<_> = bounds::shift_scalar_terms_per_constituent(&q5m4, 4, 5)?;
    println!("  per-constituent scalar check  {separate:?}");

    println!("single constituent q=4 m=11 i=1 k=5:");
    println!("  shift {}", bounds::bound_single_shift(11, 1, 5, 4)?);
    println!("  shift-scalar {}", bounds::bound_single_shift_scalar(11, 1, 5, 4)?);
    println!("  full {}", bounds::bound_single_full(4, 5, 1, 11)?);

    // Values far beyond u64 stay exact.
    // Two rows over the coset of 1 modulo 61, where 2 has order 60: K = 120.
    let big = [ConstituentArith::new(1, 60, 120)];
    println!("q=2 m=61 K=120 shift: {}", bounds::bound_shift(&big, 61, 2)?);
    Ok(())
}
