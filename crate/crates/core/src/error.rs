use thiserror::Error;

/// Errors raised by site selection, surfaces, lookup and the compressing buffer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid site count, item width, hybrid layout or buffer capacity.
    #[error("configuration error: {0}")]
    Config(String),

    /// Stretched and tilted curation only cover streams of up to `2^S - 2` items.
    #[error("capacity exceeded: {algo} with S={sites} cannot ingest item T={t}")]
    Capacity { algo: String, sites: u64, t: u64 },

    /// Value does not fit the surface's item width.
    #[error("value {value} does not fit in {bits} bits")]
    Domain { value: u64, bits: u32 },

    /// Malformed serialized input (hex blob, algorithm name, vector row).
    #[error("parse error: {0}")]
    Parse(String),

    /// Replay-defined operation requested beyond its practicality cap.
    #[error("resource limit: replay to T={t} exceeds cap of {cap}")]
    Resource { t: u64, cap: u64 },

    /// Compressing buffer fed a non-consecutive stream index.
    #[error("sequence error: expected stream index {expected}, got {got}")]
    Sequence { expected: u64, got: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
