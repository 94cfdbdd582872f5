//! Site selection across all algorithms.

use smallvec::SmallVec;

use crate::algorithm::{Algorithm, Distribution, HybridSpec};
use crate::bits::site_log2;
use crate::error::{Error, Result};
use crate::greedy::{greedy_site, GreedyCurator, REPLAY_CAP};
use crate::steady::steady_site_log2;

/// Sites an arrival is written to; empty means discard.
///
/// Base algorithms select at most one site. A hybrid selects at most one per
/// segment, reported in ascending order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SiteSelection(SmallVec<[u64; 2]>);

impl SiteSelection {
    pub fn discard() -> Self {
        Self::default()
    }

    pub fn single(site: u64) -> Self {
        let mut v = SmallVec::new();
        v.push(site);
        Self(v)
    }

    pub fn from_option(site: Option<u64>) -> Self {
        site.map(Self::single).unwrap_or_default()
    }

    pub fn is_discard(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sites(&self) -> &[u64] {
        &self.0
    }

    pub fn contains(&self, site: u64) -> bool {
        self.0.contains(&site)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, site: u64) {
        self.0.push(site);
    }
}

impl FromIterator<u64> for SiteSelection {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut v: SmallVec<[u64; 2]> = iter.into_iter().collect();
        v.sort_unstable();
        Self(v)
    }
}

impl<'a> IntoIterator for &'a SiteSelection {
    type Item = &'a u64;
    type IntoIter = std::slice::Iter<'a, u64>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub fn steady_assign(sites: u64, t: u64) -> Result<SiteSelection> {
    let s = site_log2(sites)?;
    Ok(SiteSelection::from_option(steady_site_log2(s, t)))
}

/// Pure stretched selection; rebuilt by replay, so `t` is capped at
/// [`REPLAY_CAP`].
pub fn stretched_assign(sites: u64, t: u64) -> Result<SiteSelection> {
    greedy_site(Distribution::Stretched, sites, t).map(SiteSelection::from_option)
}

/// Pure tilted selection; rebuilt by replay, so `t` is capped at
/// [`REPLAY_CAP`].
pub fn tilted_assign(sites: u64, t: u64) -> Result<SiteSelection> {
    greedy_site(Distribution::Tilted, sites, t).map(SiteSelection::from_option)
}

fn distribution_site(d: Distribution, sites: u64, t: u64) -> Result<Option<u64>> {
    match d {
        Distribution::Steady => Ok(steady_site_log2(site_log2(sites)?, t)),
        _ => greedy_site(d, sites, t),
    }
}

pub fn hybrid_assign(spec: &HybridSpec, sites: u64, t: u64) -> Result<SiteSelection> {
    let algo = Algorithm::Hybrid(spec.clone());
    algo.validate(sites)?;
    algo.ensure_capacity(sites, t)?;
    let mut out = SiteSelection::discard();
    for (offset, seg) in spec.with_offsets() {
        if let Some(k) = distribution_site(seg.distribution, seg.sites, t)? {
            out.push(offset + k);
        }
    }
    Ok(out)
}

/// Pure site selection for ingest `t` on `sites` sites.
pub fn assign(algo: &Algorithm, sites: u64, t: u64) -> Result<SiteSelection> {
    match algo {
        Algorithm::Steady => steady_assign(sites, t),
        Algorithm::Stretched => stretched_assign(sites, t),
        Algorithm::Tilted => tilted_assign(sites, t),
        Algorithm::Hybrid(spec) => hybrid_assign(spec, sites, t),
    }
}

#[derive(Debug, Clone)]
enum Lane {
    Steady { log2_sites: u32 },
    Greedy(GreedyCurator),
}

/// Site selection with a replay cache for the greedy distributions.
///
/// Gives the same answers as [`assign`], but queries with increasing `t`
/// reuse the replay state, so a sequential scan costs `O(S)` per item
/// instead of `O(T * S)`. Owned by one stream; not shared.
#[derive(Debug, Clone)]
pub struct Selector {
    algo: Algorithm,
    sites: u64,
    lanes: Vec<(u64, Lane)>,
}

impl Selector {
    pub fn new(algo: &Algorithm, sites: u64) -> Result<Self> {
        algo.validate(sites)?;
        let make = |d: Distribution, n: u64| -> Result<Lane> {
            Ok(match d {
                Distribution::Steady => Lane::Steady {
                    log2_sites: site_log2(n)?,
                },
                _ => Lane::Greedy(GreedyCurator::new(d, n)?),
            })
        };
        let lanes = match algo {
            Algorithm::Hybrid(spec) => spec
                .with_offsets()
                .map(|(o, seg)| Ok((o, make(seg.distribution, seg.sites)?)))
                .collect::<Result<Vec<_>>>()?,
            other => vec![(0, make(other.single().unwrap(), sites)?)],
        };
        Ok(Self {
            algo: algo.clone(),
            sites,
            lanes,
        })
    }

    pub fn algorithm(&self) -> &Algorithm {
        &self.algo
    }

    pub fn sites(&self) -> u64 {
        self.sites
    }

    /// Replays greedy lanes so that the next query for `t` is a single step.
    pub fn seek(&mut self, t: u64) -> Result<()> {
        for (_, lane) in &mut self.lanes {
            if let Lane::Greedy(curator) = lane {
                seek_curator(curator, t)?;
            }
        }
        Ok(())
    }

    /// Selection for ingest `t`.
    ///
    /// Moving backwards restarts the replay; catching up more than
    /// [`REPLAY_CAP`] steps is refused.
    pub fn select(&mut self, t: u64) -> Result<SiteSelection> {
        self.algo.ensure_capacity(self.sites, t)?;
        let mut out = SiteSelection::discard();
        for (offset, lane) in &mut self.lanes {
            let site = match lane {
                Lane::Steady { log2_sites } => steady_site_log2(*log2_sites, t),
                Lane::Greedy(curator) => {
                    if curator.next_t() != t {
                        seek_curator(curator, t)?;
                    }
                    curator.step()?
                }
            };
            if let Some(k) = site {
                out.push(*offset + k);
            }
        }
        Ok(out)
    }
}

fn seek_curator(curator: &mut GreedyCurator, t: u64) -> Result<()> {
    if curator.next_t() > t {
        *curator = GreedyCurator::new(curator.distribution(), curator.sites())?;
    }
    if t - curator.next_t() > REPLAY_CAP {
        return Err(Error::Resource { t, cap: REPLAY_CAP });
    }
    curator.advance_to(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sel(sites: &[u64]) -> SiteSelection {
        sites.iter().copied().collect()
    }

    #[test]
    fn base_examples() {
        assert_eq!(steady_assign(4, 2).unwrap(), sel(&[2]));
        assert_eq!(steady_assign(4, 4).unwrap(), sel(&[]));
        assert_eq!(steady_assign(4, 5).unwrap(), sel(&[0]));
        assert_eq!(steady_assign(4, 7).unwrap(), sel(&[2]));
        assert_eq!(steady_assign(4, 15).unwrap(), sel(&[0]));
        assert_eq!(stretched_assign(4, 1).unwrap(), sel(&[1]));
        assert_eq!(stretched_assign(4, 4).unwrap(), sel(&[]));
        assert_eq!(stretched_assign(4, 12).unwrap(), sel(&[2]));
        assert_eq!(tilted_assign(4, 3).unwrap(), sel(&[3]));
        assert_eq!(tilted_assign(4, 4).unwrap(), sel(&[0]));
        assert_eq!(tilted_assign(4, 7).unwrap(), sel(&[0]));
    }

    #[test]
    fn hybrid_examples() {
        let st: Algorithm = "hybrid:steady=4+tilted=4".parse().unwrap();
        let ss: Algorithm = "hybrid:steady=4+steady=4".parse().unwrap();
        assert_eq!(assign(&st, 8, 2).unwrap(), sel(&[2, 6]));
        assert_eq!(assign(&st, 8, 4).unwrap(), sel(&[4]));
        assert_eq!(assign(&ss, 8, 5).unwrap(), sel(&[0, 4]));
    }

    #[test]
    fn assign_errors() {
        assert!(matches!(steady_assign(6, 0), Err(Error::Config(_))));
        assert!(matches!(tilted_assign(8, 254), Err(Error::Capacity { .. })));
        let st: Algorithm = "hybrid:steady=4+tilted=4".parse().unwrap();
        assert!(matches!(assign(&st, 12, 0), Err(Error::Config(_))));
        assert!(matches!(assign(&st, 8, 14), Err(Error::Capacity { .. })));
    }

    #[test]
    fn selector_agrees_with_pure_in_any_order() {
        let algos: Vec<Algorithm> = ["steady", "stretched", "tilted", "hybrid:stretched=8+steady=4"]
            .iter()
            .map(|a| a.parse().unwrap())
            .collect();
        for algo in &algos {
            let sites = if algo.single().is_some() { 8 } else { 12 };
            let mut selector = Selector::new(algo, sites).unwrap();
            for t in [5u64, 6, 7, 100, 3, 0, 13, 13, 99] {
                assert_eq!(selector.select(t).unwrap(), assign(algo, sites, t).unwrap());
            }
        }
    }
}
