//! The compressing circular buffer next to a steady surface: similar spacing,
//! but compression moves items while the surface never does.
//!
//!     cargo run --example compressing_buffer

use dstream::compressing::CompressingBuffer;
use dstream::lookup::lookup;
use dstream::oracle::{max_gap, RetainedSet};
use dstream::Algorithm;

fn main() -> dstream::Result<()> {
    let mut buf = CompressingBuffer::new(8)?;
    for t in 0..100u64 {
        let before: Vec<u64> = buf.items().iter().map(|&(i, _)| i).collect();
        buf.ingest(t, t * t)?;
        let after: Vec<u64> = buf.items().iter().map(|&(i, _)| i).collect();
        if after.len() < before.len() {
            println!("T={t:3}: compressed {before:?} -> {after:?}, interval now {}", buf.interval());
        }
    }
    let cb = buf.retained();
    let steady = RetainedSet::from_lookup(&lookup(&Algorithm::Steady, 8, 100)?);
    println!("compressing: {:?} (widest gap {})", cb.times(), max_gap(&cb, 100));
    println!("steady:      {:?} (widest gap {})", steady.times(), max_gap(&steady, 100));
    Ok(())
}
