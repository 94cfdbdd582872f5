//! Generate conformance vectors, serialize them, and check them back.
//!
//!     cargo run --example conformance_vectors

use dstream::vectors::{check, generate, read_vectors, write_vectors, GridConfig};
use dstream::SiteSelection;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = GridConfig {
        algos: vec!["steady".parse()?, "stretched".parse()?, "tilted".parse()?],
        max_sites: 8,
        max_t: 64,
        deep_samples: 4,
        seed: 42,
    };
    let vectors = generate(&cfg)?;
    let mut file = Vec::new();
    write_vectors(&mut file, &vectors)?;
    let text = String::from_utf8(file)?;
    println!("{} vectors; first lines:", vectors.len());
    for line in text.lines().take(6) {
        println!("  {line}");
    }

    let mut parsed = read_vectors(text.as_bytes())?;
    println!("clean check: {} mismatches", check(&parsed).len());
    parsed[10].expected = SiteSelection::single(3);
    for m in check(&parsed) {
        println!("corrupted vector {} caught: expected {:?}, recomputed {:?}", m.index, m.vector.expected.sites(), m.actual);
    }
    Ok(())
}
