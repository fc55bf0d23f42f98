//! Decides Frobenius nonclassicality for a few plane curves and shows the
//! relation between `F_{1,0}` and `F`.

use frobnc::frobcore::{compute_fab, is_frobenius_nonclassical, multi_fn_profile};
use frobnc::gf::make_field;
use frobnc::mpoly::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f4 = make_field(2, 2, None)?;
    let f2 = make_field(2, 1, None)?;
    let f5 = make_field(5, 1, None)?;
    let curves = [
        ("Hermitian cubic", parse_poly("x0^3 + x1^3 + x2^3", &f4, 3)?),
        (
            "degree q+2 curve",
            parse_poly(
                "x0^4 + x0^2*x1^2 + x1^4 + x0^2*x1*x2 + x0*x1^2*x2 + x0^2*x2^2 + x0*x1*x2^2 + x1^2*x2^2 + x2^4",
                &f2,
                3,
            )?,
        ),
        ("classical cubic", parse_poly("x0^3 + 2*x1^3 + x2^3 + x0*x1*x2", &f5, 3)?),
    ];
    for (name, f) in &curves {
        let q = f.field().order() as u64;
        let c = is_frobenius_nonclassical(f, q)?;
        println!("{name}: F = {f}");
        println!("  F_(1,0) = {}", compute_fab(f, 1, 0, q)?);
        println!("  nonclassical over F_{q}: {} ({})", c.nonclassical, c.kind.name());
        for (m, c) in multi_fn_profile(f, q, &[2, 3])? {
            println!("  over F_{}: {}", q.pow(m), c.nonclassical);
        }
    }
    Ok(())
}
