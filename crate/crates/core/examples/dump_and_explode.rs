//! Dump several surfaces as `(T, hex)` rows, then explode them back into
//! one row per stored item with recovered ingest times.
//!
//!     cargo run --example dump_and_explode

use std::io::{self, Write};

use dstream::explode::explode_table;
use dstream::{Algorithm, Surface};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut table = String::from("sensor,dstream_algo,dstream_S,dstream_T,dstream_storage_hex\n");
    for (sensor, algo, n) in [("a", "steady", 8u64), ("b", "tilted", 12), ("c", "steady", 2)] {
        let mut s = Surface::new(algo.parse::<Algorithm>()?, 4, 8)?;
        for t in 0..n {
            s.ingest(100 + t)?;
        }
        table.push_str(&format!("{sensor},{algo},4,{},{}\n", s.t(), s.to_hex()));
    }
    println!("dumps:\n{table}");

    let mut rejects = Vec::new();
    let stdout = io::stdout();
    let summary = explode_table(table.as_bytes(), 8, stdout.lock(), &mut rejects)?;
    io::stdout().flush()?;
    println!("\n{summary:?}");
    Ok(())
}
