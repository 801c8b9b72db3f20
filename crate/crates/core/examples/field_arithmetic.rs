//! Arithmetic in F_16 and its subfield F_4.

use qcweights::fields::{build_embedding, Field};

fn main() -> qcweights::Result<()> {
    let f16 = Field::build(2, 4)?;
    println!("F_16 modulus coefficients: {:?}", f16.spec().modulus);

    let y = f16.root();
    let g = f16.primitive_element();
    println!("root y = {y} (coords {:?}), primitive element = {g}", f16.coeffs(y));

    let a = f16.from_coeffs(&[1, 1, 0, 1])?;
    let b = f16.pow(y, 7);
    println!("a = {a}, b = y^7 = {b}");
    println!("a + b = {}", f16.add(a, b));
    println!("a * b = {}", f16.mul(a, b));
    println!("a / b = {}", f16.div(a, b)?);
    println!("a^q = {} (Frobenius)", f16.frobenius(a));
    println!("order of a = {}", f16.element_order(a)?);

    let f4 = Field::build(2, 2)?;
    let emb = build_embedding(&f4, &f16)?;
    for x in f4.canonical_elements() {
        let image = emb.apply(x);
        println!("F_4 element {x} -> F_16 element {image}, back: {:?}", emb.preimage(image));
    }
    Ok(())
}
