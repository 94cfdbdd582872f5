//! Split one buffer between steady history and a tilted recent window.
//!
//!     cargo run --example hybrid_split

use dstream::lookup::lookup;
use dstream::{Algorithm, Surface};

fn main() -> dstream::Result<()> {
    let algo: Algorithm = "hybrid:steady=8+tilted=8".parse()?;
    let mut surface = Surface::new(algo.clone(), 16, 8)?;
    while surface.t() < 5000 && surface.has_ingest_capacity() {
        surface.ingest(surface.t() % 256)?;
    }
    let table = lookup(&algo, 16, surface.t())?;
    let (steady, tilted) = table.entries().split_at(8);
    println!("{algo} after {} items", surface.t());
    println!("  steady half: {:?}", steady.iter().flatten().collect::<Vec<_>>());
    println!("  tilted half: {:?}", tilted.iter().flatten().collect::<Vec<_>>());
    println!("  dump: {}", surface.to_hex());
    Ok(())
}
