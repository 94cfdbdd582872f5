//! Fixed-capacity stream downsampling.
//!
//! A surface holds `S` sites. Each arriving item `T` is written to a site
//! chosen by a pure function of `(S, T)`, or discarded; stored items never
//! move. Three retention profiles are provided:
//!
//! * **steady**: evenly spaced across the whole stream,
//! * **stretched**: thinned with depth, favoring the origin,
//! * **tilted**: thinned with age, favoring recent items,
//!
//! plus hybrids that split sites between them. Because placement depends only
//! on `(S, T)`, the ingest time of every stored item can be recovered later
//! from `T` alone ([`lookup`]), so surfaces can be dumped as a bare counter
//! and a hex blob and exploded back into one row per item.
//!
//! ```
//! use dstream::{Algorithm, Surface};
//!
//! let mut surface = Surface::new(Algorithm::Steady, 4, 8).unwrap();
//! for t in 0..8u64 {
//!     surface.ingest(t).unwrap();
//! }
//! assert_eq!(surface.to_hex(), "05010703");
//! let table = dstream::lookup::lookup(&Algorithm::Steady, 4, surface.t()).unwrap();
//! assert_eq!(table.entries(), &[Some(5), Some(1), Some(7), Some(3)]);
//! ```

pub mod algorithm;
pub mod bench;
pub mod bits;
pub mod compressing;
pub mod error;
pub mod explode;
pub mod greedy;
pub mod lookup;
pub mod oracle;
pub mod selection;
pub mod steady;
pub mod surface;
pub mod vectors;

pub use algorithm::{Algorithm, Distribution, HybridSpec, Segment};
pub use bits::{epoch, hanoi_value};
pub use error::{Error, Result};
pub use lookup::LookupTable;
pub use selection::{
    assign, hybrid_assign, steady_assign, stretched_assign, tilted_assign, Selector, SiteSelection,
};
pub use surface::Surface;
