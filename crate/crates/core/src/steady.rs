//! Steady site selection.
//!
//! Epoch 0 fills sites by identity. In epoch `t >= 1` only arrivals with
//! hanoi value `>= t` are kept; the arrival with in-epoch index `i` takes the
//! site of the `i`-th item of hanoi value `t - 1`, which is no longer needed
//! once the spacing doubles. Each step strictly lowers the epoch, so the loop
//! below runs at most `epoch(S, T)` times.

use crate::bits::{epoch_unchecked, hanoi_value, site_log2};
use crate::error::Result;

/// Site for ingest `t` on `2^log2_sites` sites, or `None` to discard.
///
/// `log2_sites` must be at least 2; callers validate it once.
#[inline]
pub fn steady_site_log2(log2_sites: u32, t: u64) -> Option<u64> {
    let mut t = t;
    let mut ep = epoch_unchecked(log2_sites, t);
    if hanoi_value(t) < ep {
        return None;
    }
    let half = 1u128 << (log2_sites - 1);
    while ep > 0 {
        let i = (((t as u128) + 1) >> ep) - half - 1;
        // the expired item of hanoi value ep - 1 with incidence i
        t = (((2 * i + 1) << (ep - 1)) - 1) as u64;
        ep = epoch_unchecked(log2_sites, t);
    }
    Some(t)
}

/// Site for ingest `t` on `sites` sites, or `None` to discard.
pub fn steady_site(sites: u64, t: u64) -> Result<Option<u64>> {
    let s = site_log2(sites)?;
    Ok(steady_site_log2(s, t))
}

/// Arrival times written during epoch `ep >= 1`, in increasing order.
pub(crate) fn epoch_writers(log2_sites: u32, ep: u32) -> impl Iterator<Item = u64> {
    let half = 1u128 << (log2_sites - 1);
    (0..half).map(move |i| (((half + 1 + i) << ep) - 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(steady_site(4, 2).unwrap(), Some(2));
        assert_eq!(steady_site(4, 4).unwrap(), None);
        assert_eq!(steady_site(4, 5).unwrap(), Some(0));
        assert_eq!(steady_site(4, 7).unwrap(), Some(2));
        assert_eq!(steady_site(4, 15).unwrap(), Some(0));
    }

    #[test]
    fn identity_fill() {
        for s in 2..=10 {
            for t in 0..(1u64 << s) {
                assert_eq!(steady_site_log2(s, t), Some(t));
            }
        }
    }

    #[test]
    fn discard_law() {
        for s in 2..=6u32 {
            for t in 0..(1u64 << 14) {
                let discard = hanoi_value(t) < epoch_unchecked(s, t);
                assert_eq!(steady_site_log2(s, t).is_none(), discard, "s={s} t={t}");
            }
        }
    }

    #[test]
    fn extreme_depths_stay_in_range() {
        for s in [2u32, 6, 10, 20] {
            for t in [u64::MAX, u64::MAX - 1, (1 << 63) - 1, 1 << 63, (1 << 40) + 12345] {
                if let Some(k) = steady_site_log2(s, t) {
                    assert!(k < (1 << s));
                }
            }
            assert!(steady_site_log2(s, u64::MAX).is_some());
        }
    }

    #[test]
    fn epoch_writers_are_the_kept_arrivals() {
        let s = 3;
        for ep in 1..6u32 {
            let lo = 1u64 << (s + ep - 1);
            let hi = 1u64 << (s + ep);
            let kept: Vec<u64> = (lo..hi).filter(|&t| steady_site_log2(s, t).is_some()).collect();
            assert_eq!(epoch_writers(s, ep).collect::<Vec<_>>(), kept);
        }
    }
}
