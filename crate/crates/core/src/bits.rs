//! Bit-level kernels behind steady curation.

use crate::error::{Error, Result};

/// Largest supported site count for a single-distribution surface.
pub const MAX_SITES: u64 = 1 << 20;

/// Number of significant bits in `x`; `bit_length(0) == 0`.
#[inline]
pub fn bit_length(x: u64) -> u32 {
    u64::BITS - x.leading_zeros()
}

/// Ruler sequence value of ingest `t`: trailing zeros of `t + 1`.
///
/// Computed as the trailing ones of `t`, so `u64::MAX` maps to 64 without
/// overflowing.
#[inline]
pub fn hanoi_value(t: u64) -> u32 {
    (!t).trailing_zeros()
}

/// Checks that `sites` is a power of two in `[4, 2^20]` and returns its log2.
pub fn site_log2(sites: u64) -> Result<u32> {
    if !(4..=MAX_SITES).contains(&sites) || !sites.is_power_of_two() {
        return Err(Error::Config(format!(
            "site count must be a power of two in [4, {MAX_SITES}], got {sites}"
        )));
    }
    Ok(sites.trailing_zeros())
}

/// Steady thinning level: `max(bit_length(t) - log2(sites), 0)`.
pub fn epoch(sites: u64, t: u64) -> Result<u32> {
    let s = site_log2(sites)?;
    Ok(epoch_unchecked(s, t))
}

#[inline]
pub(crate) fn epoch_unchecked(log2_sites: u32, t: u64) -> u32 {
    bit_length(t).saturating_sub(log2_sites)
}
