//! Primitive idempotents of F_2[x]/(x^15 - 1) and the constituent fields
//! they cut out.

use qcweights::ring::{RingContext, RingOp};

fn main() -> qcweights::Result<()> {
    let ctx = RingContext::new(2, 15, 1)?;
    let mut sum = ctx.zero();
    for coset in ctx.cosets() {
        let e = ctx.primitive_idempotent(coset)?;
        let h = ctx.minimal_poly(coset)?;
        let squared = ctx.ring_arith(&e, &e, RingOp::Mul)?;
        println!(
            "coset {:?}: e = {:?}, e^2 == e: {}, h = {:?}",
            coset.members,
            e.coeffs(),
            squared == e,
            h
        );
        sum = ctx.ring_arith(&sum, &e, RingOp::Add)?;

        let field = ctx.constituent_field(coset)?;
        let x = field.reduce(&[0, 1]);
        let inverse = field.inv(&x)?;
        println!("  in F_2[x]/(h): x^-1 = {:?}, x * x^-1 = {:?}", inverse, field.mul(&x, &inverse));
    }
    println!("sum of idempotents is 1: {}", sum == ctx.one());
    Ok(())
}
