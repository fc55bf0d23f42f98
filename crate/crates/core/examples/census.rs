//! Exhaustive census of plane quartics over F_2: the smooth nonclassical
//! ones, found shard by shard.

use frobnc::analysis::{census, CensusConfig, CensusFilter, Shard};
use frobnc::gf::make_field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = make_field(2, 1, None)?;
    let filters = [CensusFilter::Fn, CensusFilter::Smooth];
    for index in 0..4 {
        let cfg = CensusConfig::new(&f2, 2, 4, &filters).with_shard(Shard { index, total: 4 });
        let summary = census(&cfg, |r| {
            let forms: Vec<&str> = r.normal_forms.iter().map(|c| c.name()).collect();
            println!("  #{} {} points={} normal forms={forms:?}", r.index, r.poly, r.point_count);
        })?;
        println!("shard {}: {} candidates, {} hits", summary.shard, summary.candidates, summary.hits);
    }
    Ok(())
}
