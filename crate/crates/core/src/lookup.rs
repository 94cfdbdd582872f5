//! Metadata-free site lookup: recover each site's ingest time from
//! `(algorithm, S, T)` alone.

use crate::algorithm::{Algorithm, Distribution};
use crate::bits::{epoch_unchecked, site_log2};
use crate::error::{Error, Result};
use crate::greedy::REPLAY_CAP;
use crate::selection::Selector;
use crate::steady::{epoch_writers, steady_site_log2};

/// Ingest time of the item resident at each site; `None` if never written.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LookupTable {
    entries: Vec<Option<u64>>,
}

impl LookupTable {
    fn empty(sites: u64) -> Self {
        Self {
            entries: vec![None; sites as usize],
        }
    }

    pub fn entries(&self) -> &[Option<u64>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, site: usize) -> Option<u64> {
        self.entries.get(site).copied().flatten()
    }

    /// Resident ingest times in increasing order.
    pub fn retained(&self) -> Vec<u64> {
        let mut times: Vec<u64> = self.entries.iter().flatten().copied().collect();
        times.sort_unstable();
        times
    }
}

fn check_stream(algo: &Algorithm, sites: u64, t: u64) -> Result<()> {
    algo.validate(sites)?;
    if t > 0 {
        algo.ensure_capacity(sites, t - 1)?;
    }
    Ok(())
}

/// Reference lookup: replays every ingest before `t` and keeps the last
/// writer of each site. Limited to `t <= REPLAY_CAP`.
pub fn lookup_replay(algo: &Algorithm, sites: u64, t: u64) -> Result<LookupTable> {
    check_stream(algo, sites, t)?;
    if t > REPLAY_CAP {
        return Err(Error::Resource { t, cap: REPLAY_CAP });
    }
    let mut table = LookupTable::empty(sites);
    let mut selector = Selector::new(algo, sites)?;
    for now in 0..t {
        for &k in &selector.select(now)? {
            table.entries[k as usize] = Some(now);
        }
    }
    Ok(table)
}

/// Steady lookup at any depth.
///
/// Visits only arrivals that were stored: the identity fill, then for each
/// epoch the `S/2` arrivals whose hanoi value reaches it. Later writers
/// overwrite earlier ones, which leaves the resident item per site.
pub fn lookup_steady_fast(sites: u64, t: u64) -> Result<LookupTable> {
    let s = site_log2(sites)?;
    let mut table = LookupTable::empty(sites);
    if t == 0 {
        return Ok(table);
    }
    for k in 0..t.min(sites) {
        table.entries[k as usize] = Some(k);
    }
    let last_epoch = epoch_unchecked(s, t - 1);
    for ep in 1..=last_epoch {
        for writer in epoch_writers(s, ep).take_while(|&w| w < t) {
            let k = steady_site_log2(s, writer).expect("epoch writers are stored");
            table.entries[k as usize] = Some(writer);
        }
    }
    Ok(table)
}

/// Lookup by the fastest available route.
///
/// Steady segments decode directly; stretched and tilted segments replay and
/// so are subject to [`REPLAY_CAP`]. A hybrid is looked up segment by
/// segment, so the same ingest time may appear once per segment.
pub fn lookup(algo: &Algorithm, sites: u64, t: u64) -> Result<LookupTable> {
    check_stream(algo, sites, t)?;
    match algo {
        Algorithm::Steady => lookup_steady_fast(sites, t),
        Algorithm::Stretched | Algorithm::Tilted => lookup_replay(algo, sites, t),
        Algorithm::Hybrid(spec) => {
            let mut entries = Vec::with_capacity(sites as usize);
            for seg in spec.segments() {
                let part = match seg.distribution {
                    Distribution::Steady => lookup_steady_fast(seg.sites, t)?,
                    d => lookup_replay(&d.into(), seg.sites, t)?,
                };
                entries.extend(part.entries);
            }
            Ok(LookupTable { entries })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(v: &[Option<u64>]) -> Vec<Option<u64>> {
        v.to_vec()
    }

    #[test]
    fn replay_examples() {
        let algo = Algorithm::Steady;
        assert_eq!(
            lookup_replay(&algo, 4, 4).unwrap().entries(),
            table(&[Some(0), Some(1), Some(2), Some(3)])
        );
        assert_eq!(
            lookup_replay(&algo, 4, 8).unwrap().entries(),
            table(&[Some(5), Some(1), Some(7), Some(3)])
        );
        assert_eq!(
            lookup_replay(&algo, 4, 16).unwrap().entries(),
            table(&[Some(15), Some(11), Some(7), Some(3)])
        );
        assert_eq!(
            lookup_replay(&algo, 4, 2).unwrap().entries(),
            table(&[Some(0), Some(1), None, None])
        );
    }

    #[test]
    fn fast_examples() {
        assert_eq!(
            lookup_steady_fast(4, 8).unwrap().entries(),
            table(&[Some(5), Some(1), Some(7), Some(3)])
        );
        assert_eq!(
            lookup_steady_fast(4, 4).unwrap().entries(),
            table(&[Some(0), Some(1), Some(2), Some(3)])
        );
        assert_eq!(lookup_steady_fast(4, 0).unwrap().entries(), table(&[None; 4]));
    }

    #[test]
    fn fast_handles_full_depth() {
        let t = u64::MAX;
        let tab = lookup_steady_fast(16, t).unwrap();
        for (k, e) in tab.entries().iter().enumerate() {
            let e = e.unwrap();
            assert!(e < t);
            assert_eq!(steady_site_log2(4, e), Some(k as u64));
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            lookup_replay(&Algorithm::Tilted, 64, REPLAY_CAP + 1),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            lookup(&Algorithm::Tilted, 8, 1 << 40),
            Err(Error::Capacity { .. })
        ));
        assert!(lookup(&Algorithm::Stretched, 8, 254).is_ok());
        assert!(matches!(
            lookup(&Algorithm::Stretched, 8, 255),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(lookup_steady_fast(5, 1), Err(Error::Config(_))));
    }

    #[test]
    fn hybrid_composes_segments() {
        for spec in ["hybrid:steady=4+tilted=8", "hybrid:stretched=4+steady=4+tilted=4"] {
            let algo: Algorithm = spec.parse().unwrap();
            let sites = match &algo {
                Algorithm::Hybrid(h) => h.total_sites(),
                _ => unreachable!(),
            };
            for t in [0, 3, 9, 14] {
                assert_eq!(lookup(&algo, sites, t).unwrap(), lookup_replay(&algo, sites, t).unwrap());
            }
        }
    }
}
