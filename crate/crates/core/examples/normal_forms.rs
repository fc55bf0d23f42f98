//! Matches polynomials against the normal forms of smooth nonclassical
//! hypersurfaces of degree q+1 and q+2, and detects separated variables.

use frobnc::analysis::{normal_form_match, separated_variables_detect, NormalFormClause};
use frobnc::families::{char2_even_f4, gen_space_filling, q_plus_2_builtin};
use frobnc::gf::make_field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (gen_space_filling(&make_field(3, 1, None)?, 3)?.poly, NormalFormClause::SkewQPlus1),
        (char2_even_f4()?.poly, NormalFormClause::Char2Even),
        (q_plus_2_builtin("f8")?.poly, NormalFormClause::QPlus2),
    ];
    for (f, clause) in &cases {
        let v = normal_form_match(f, *clause)?;
        println!("{} over {}: {} = {}", f, f.field().header(), clause.name(), v.matched);
        if let Some(y0) = &v.y0 {
            println!("  distinguished form y0 = {y0}");
        }
        match separated_variables_detect(f) {
            Some(s) => println!("  separated: ({}) + ({})", s.g, s.h),
            None => println!("  no separated variables"),
        }
    }
    Ok(())
}
