//! Feed a stream through a steady surface and watch the retained spacing.
//!
//!     cargo run --example steady_curation

use dstream::lookup::lookup;
use dstream::oracle::{max_gap, RetainedSet};
use dstream::{Algorithm, Surface};

fn main() -> dstream::Result<()> {
    let mut surface = Surface::new(Algorithm::Steady, 8, 16)?;
    for t in 0..200u64 {
        let reading = t * 37 % 1000;
        let placed = surface.ingest(reading)?;
        if t < 12 || t % 40 == 0 {
            println!("T={t:3} value={reading:3} -> {:?}", placed.sites());
        }
    }
    let table = lookup(surface.algorithm(), surface.sites(), surface.t())?;
    println!("\nafter {} items:", surface.t());
    for (k, (tbar, v)) in table.entries().iter().zip(surface.slots()).enumerate() {
        println!("  site {k}: ingested at T={:?}, value {v}", tbar.unwrap());
    }
    let retained = RetainedSet::from_lookup(&table);
    println!("retained times {:?}, widest gap {}", retained.times(), max_gap(&retained, surface.t()));
    Ok(())
}
