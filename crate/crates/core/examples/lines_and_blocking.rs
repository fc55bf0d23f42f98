//! Classifies the 21 lines of PG(2, 4) against the Hermitian cubic and
//! checks that its rational points form a blocking set.

use frobnc::analysis::{blocking_verdict, fq_line_intersection_profile, line_incidence, LineClass};
use frobnc::families::gen_hermitian;
use frobnc::gf::make_field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f4 = make_field(2, 2, None)?;
    let c = gen_hermitian(&f4, 2, 2)?.poly;
    let rep = line_incidence(&c, true, true)?;
    println!(
        "{c}: {} contained, {} transverse, {} tangent or singular",
        rep.contained, rep.transverse, rep.non_transverse
    );
    for (line, class) in rep.lines.iter().take(5) {
        if *class != LineClass::Contained {
            let prof = fq_line_intersection_profile(&c, line)?;
            let pts: Vec<String> = prof.iter().map(|p| format!("deg {} mult {}", p.degree, p.multiplicity)).collect();
            println!("  {} {}: {}", class.name(), line.points()[0], pts.join(", "));
        }
    }
    let b = blocking_verdict(&c)?;
    println!("blocking = {}, nontrivial = {}", b.blocking, b.nontrivial);
    if let Some(h) = b.heim {
        println!("Heim: {} >= {} is {}", h.observed, h.value, h.satisfied);
    }
    Ok(())
}
