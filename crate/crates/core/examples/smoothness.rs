//! Certified smoothness through the Macaulay linear system, a singular point
//! search, and a Macaulay resultant.

use frobnc::analysis::{macaulay_resultant, singular_points, smoothness, SmoothnessMode};
use frobnc::gf::make_field;
use frobnc::mpoly::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f3 = make_field(3, 1, None)?;
    let smooth = parse_poly("x0^3*x1 - x0*x1^3 + x2^3*x3 - x2*x3^3", &f3, 4)?;
    let v = smoothness(&smooth, SmoothnessMode::Certified)?;
    println!("{smooth}: smooth = {} ({})", v.smooth, v.label());

    let nodal = parse_poly("x1^2*x2 - x0^3 - x0^2*x2", &f3, 3)?;
    let v = smoothness(&nodal, SmoothnessMode::Certified)?;
    println!("{nodal}: smooth = {} ({})", v.smooth, v.label());
    for p in singular_points(&nodal, 1)? {
        println!("  singular at {p}");
    }

    let f7 = make_field(7, 1, None)?;
    let forms = [
        parse_poly("x0^2 + 3*x1^2", &f7, 2)?,
        parse_poly("x0^3 + x0*x1^2 + 2*x1^3", &f7, 2)?,
    ];
    let r = macaulay_resultant(&forms)?;
    println!("Res = {}", f7.format_elem(r));
    Ok(())
}
