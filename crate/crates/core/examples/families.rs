//! Builds one member of each family and executes its property manifest.

use frobnc::families::{
    char2_even_f4, gen_fermat_type, gen_hermitian, gen_pointless_diagonal, gen_space_filling,
    norm_hypersurface_default, q_plus_2_builtin, FamilyInstance,
};
use frobnc::gf::make_field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = make_field(2, 1, None)?;
    let f4 = make_field(2, 2, None)?;
    let f5 = make_field(5, 1, None)?;
    let instances: Vec<FamilyInstance> = vec![
        gen_space_filling(&f2, 3)?,
        gen_hermitian(&f4, 2, 2)?,
        char2_even_f4()?,
        q_plus_2_builtin("f4")?,
        norm_hypersurface_default(&f2, 2)?,
        gen_pointless_diagonal(&f5, 2)?,
        gen_fermat_type(2, 1, 2, 2)?,
    ];
    for inst in &instances {
        println!("[{}] {} over {}", inst.id, inst.poly, inst.poly.field().header());
        for c in inst.verify()? {
            println!("  {:<24} {}", c.property.to_string(), if c.passed { "ok" } else { "FAILED" });
        }
    }
    Ok(())
}
