//! Arithmetic in F_16, its Frobenius, and the embedding of F_4.

use frobnc::gf::{make_field, Embedding};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f16 = make_field(2, 4, None)?;
    let f4 = make_field(2, 2, None)?;
    println!("{}", f16.header());

    let a = f16.generator();
    let b = f16.add(a, f16.one());
    println!("a = {}, a + 1 = {}", f16.format_elem(a), f16.format_elem(b));
    println!("a * (a + 1) = {}", f16.format_elem(f16.mul(a, b)));
    println!("1 / a = {}", f16.format_elem(f16.inv(a)?));
    println!("a^4 = {}", f16.format_elem(f16.frobenius_pow(a, 2)));
    println!("conjugate of a over F_4 = {}", f16.format_elem(f16.conjugate(a)?));

    let emb = Embedding::between(&f4, &f16)?;
    for x in f4.elements() {
        let y = emb.apply(x);
        println!("{} -> {}", f4.format_elem(x), f16.format_elem(y));
        assert_eq!(emb.preimage(y), Some(x));
    }
    Ok(())
}
