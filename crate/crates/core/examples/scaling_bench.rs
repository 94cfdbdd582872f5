//! Per-item site-selection cost across buffer sizes and stream depths.
//!
//!     cargo run --release --example scaling_bench

use dstream::bench::{mean_ns_per_item, run_bench, BenchConfig, DepthRange};
use dstream::Algorithm;

fn main() -> dstream::Result<()> {
    let shallow = DepthRange { lo: 0, hi: 1 << 16 };
    let deep = DepthRange { lo: 1 << 31, hi: (1 << 31) + (1 << 16) };
    let rows = run_bench(&BenchConfig {
        algo: Algorithm::Steady,
        sizes: vec![64, 256, 1024],
        depths: vec![shallow, deep],
        replicates: 30,
    })?;
    for s in [64, 256, 1024] {
        for d in [shallow, deep] {
            let ns = mean_ns_per_item(&rows, |r| r.sites == s && r.t_lo == d.lo);
            println!("S={s:5} T in [{}, {}): {ns:6.2} ns/item", d.lo, d.hi);
        }
    }

    let greedy = run_bench(&BenchConfig {
        algo: Algorithm::Tilted,
        sizes: vec![16, 64],
        depths: vec![DepthRange { lo: 10_000, hi: 20_000 }],
        replicates: 5,
    })?;
    for s in [16, 64] {
        println!("tilted S={s:3}: {:6.2} ns/item", mean_ns_per_item(&greedy, |r| r.sites == s));
    }
    Ok(())
}
