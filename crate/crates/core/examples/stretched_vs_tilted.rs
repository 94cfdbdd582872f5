//! Compare where stretched and tilted curation put their sites.
//!
//!     cargo run --example stretched_vs_tilted

use dstream::lookup::lookup;
use dstream::oracle::{window_counts, window_coverage_metric, CoverageMode, RetainedSet};
use dstream::Algorithm;

fn main() -> dstream::Result<()> {
    let (sites, t) = (16, 4096);
    for (algo, mode) in [
        (Algorithm::Steady, CoverageMode::Depth),
        (Algorithm::Stretched, CoverageMode::Depth),
        (Algorithm::Tilted, CoverageMode::Age),
    ] {
        let retained = RetainedSet::from_lookup(&lookup(&algo, sites, t)?);
        println!("{algo:>9}: {:?}", retained.times());
        println!(
            "           per-eighth counts {:?}, doubling-window coverage {:.2}",
            window_counts(&retained, t),
            window_coverage_metric(&retained, t, mode)
        );
    }
    Ok(())
}
