//! Steady lookup at stream depths far beyond anything replayable.
//!
//!     cargo run --example deep_lookup

use std::time::Instant;

use dstream::lookup::lookup_steady_fast;

fn main() -> dstream::Result<()> {
    for t in [1u64 << 20, 1 << 32, 1 << 48, u64::MAX] {
        let start = Instant::now();
        let table = lookup_steady_fast(64, t)?;
        let elapsed = start.elapsed();
        let mut times: Vec<u64> = table.entries().iter().flatten().copied().collect();
        times.sort_unstable();
        println!("T={t:>20}: oldest {:>20}, newest {:>20} ({elapsed:?})", times[0], times[times.len() - 1]);
    }
    Ok(())
}
