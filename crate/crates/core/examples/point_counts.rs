//! Point counts over F_q and its extensions, compared with the bounds whose
//! hypotheses hold.

use frobnc::analysis::{point_count_report, KnownProperties};
use frobnc::families::gen_hermitian;
use frobnc::gf::make_field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f4 = make_field(2, 2, None)?;
    for n in 2..=3 {
        let h = gen_hermitian(&f4, n, n)?;
        let known = KnownProperties {
            frobenius_nonclassical: true,
            reduced: true,
            smooth_at_rational: true,
            smooth: true,
            no_rational_linear_component: true,
        };
        let rep = point_count_report(&h.poly, &[2], known)?;
        println!("{}", h.poly);
        for (m, c) in &rep.counts {
            println!("  #X(F_{}) = {c}", 4u64.pow(*m));
        }
        for b in &rep.bounds {
            let rel = if b.lower { ">=" } else { "<=" };
            println!("  {}: {} {rel} {} ({})", b.name, b.observed, b.value, if b.satisfied { "holds" } else { "fails" });
        }
    }
    Ok(())
}
