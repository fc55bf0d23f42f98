//! Sesquilinear matrices over F_9: the Hermitian/skew-Hermitian split and
//! the normal form of a Hermitian matrix.

use frobnc::frobcore::{hermitian_decompose, hermitian_normalize, hermitian_tests, SesquiMatrix};
use frobnc::gf::{make_field, Elem, Matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f9 = make_field(3, 2, None)?;
    let a = f9.generator();
    let m = Matrix::from_rows(&f9, &[vec![a, Elem::ONE], vec![f9.from_int(2), f9.mul(a, a)]]);
    let sm = SesquiMatrix::new(m, 3)?;
    println!("F = {}", sm.to_poly());
    let (h, s) = hermitian_decompose(&sm)?;
    println!("Hermitian part      {} ({:?})", h.to_poly(), hermitian_tests(&h)?);
    println!("skew-Hermitian part {} ({:?})", s.to_poly(), hermitian_tests(&s)?);

    let herm = SesquiMatrix::new(
        Matrix::from_rows(&f9, &[vec![Elem::ONE, a], vec![f9.conjugate(a)?, Elem::ZERO]]),
        3,
    )?;
    let (p, r) = hermitian_normalize(&herm)?;
    println!("{} has rank {r}; normalizing matrix rows:", herm.to_poly());
    for row in p.rows() {
        let cells: Vec<String> = row.iter().map(|&e| f9.format_elem(e)).collect();
        println!("  [{}]", cells.join(", "));
    }
    Ok(())
}
