//! Greedy eviction curation for the stretched and tilted distributions.
//!
//! Once all sites are filled, each arrival `T` either is discarded or evicts
//! the retained item `b` minimizing `(c - a) / w(b, T)`, where `a` and `c` are
//! `b`'s retained neighbors (sentinel `-1` below, the arrival `T` above). The
//! weight is `b + 1` (depth) for stretched and `T - b` (age) for tilted.
//! Discarding scores `(T - newest) / w(T, T)`, which is infinite for tilted.
//! Scores are compared exactly by cross-multiplication; ties prefer discard,
//! then the oldest `b`.

use std::cmp::Ordering;

use crate::algorithm::Distribution;
use crate::bits::site_log2;
use crate::error::{Error, Result};

/// Longest stream a replay-defined operation will rebuild from scratch.
pub const REPLAY_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, Copy)]
struct Score {
    num: u128,
    den: u128,
}

impl Score {
    fn cmp(self, other: Score) -> Ordering {
        match (self.den, other.den) {
            (0, 0) => Ordering::Equal,
            (0, _) => Ordering::Greater,
            (_, 0) => Ordering::Less,
            _ => (self.num * other.den).cmp(&(other.num * self.den)),
        }
    }
}

/// Incremental replayer for one stretched or tilted stream.
///
/// Holds the retained ingest times in increasing order along with the site
/// each occupies, so one step costs `O(S)`.
#[derive(Debug, Clone)]
pub struct GreedyCurator {
    distribution: Distribution,
    sites: u64,
    next: u64,
    retained: Vec<(u64, u64)>,
}

impl GreedyCurator {
    pub fn new(distribution: Distribution, sites: u64) -> Result<Self> {
        if distribution == Distribution::Steady {
            return Err(Error::Config("steady selection is not greedy".into()));
        }
        site_log2(sites)?;
        Ok(Self {
            distribution,
            sites,
            next: 0,
            retained: Vec::with_capacity(sites as usize),
        })
    }

    pub fn distribution(&self) -> Distribution {
        self.distribution
    }

    pub fn sites(&self) -> u64 {
        self.sites
    }

    /// Ingest time the next `step` will place.
    pub fn next_t(&self) -> u64 {
        self.next
    }

    /// Retained `(ingest time, site)` pairs, oldest first.
    pub fn retained(&self) -> &[(u64, u64)] {
        &self.retained
    }

    fn weight(&self, x: u64, t: u64) -> u128 {
        match self.distribution {
            Distribution::Stretched => x as u128 + 1,
            Distribution::Tilted => (t - x) as u128,
            Distribution::Steady => unreachable!(),
        }
    }

    /// Decision for the next arrival, without applying it.
    fn choose(&self) -> Choice {
        let t = self.next;
        if t < self.sites {
            return Choice::Fill(t);
        }
        let newest = self.retained.last().map(|&(x, _)| x).expect("filled");
        let mut best: Option<(Score, Option<usize>)> = None;
        let discard = Score {
            num: (t - newest) as u128,
            den: self.weight(t, t),
        };
        if discard.den != 0 {
            best = Some((discard, None));
        }
        let n = self.retained.len();
        for j in 0..n {
            let below = if j == 0 { -1i128 } else { self.retained[j - 1].0 as i128 };
            let above = if j + 1 == n { t as i128 } else { self.retained[j + 1].0 as i128 };
            let score = Score {
                num: (above - below) as u128,
                den: self.weight(self.retained[j].0, t),
            };
            match best {
                Some((b, _)) if score.cmp(b) != Ordering::Less => {}
                _ => best = Some((score, Some(j))),
            }
        }
        match best.expect("at least one retained item").1 {
            None => Choice::Discard,
            Some(j) => Choice::Evict(j),
        }
    }

    /// Places the next arrival and returns its site, or `None` if discarded.
    pub fn step(&mut self) -> Result<Option<u64>> {
        let t = self.next;
        if !self.distribution.has_ingest_capacity(self.sites, t) {
            return Err(Error::Capacity {
                algo: self.distribution.to_string(),
                sites: self.sites,
                t,
            });
        }
        let site = match self.choose() {
            Choice::Fill(k) => {
                self.retained.push((t, k));
                Some(k)
            }
            Choice::Discard => None,
            Choice::Evict(j) => {
                let (_, k) = self.retained.remove(j);
                self.retained.push((t, k));
                Some(k)
            }
        };
        self.next += 1;
        Ok(site)
    }

    /// Steps until `next_t() == t`.
    pub fn advance_to(&mut self, t: u64) -> Result<()> {
        while self.next < t {
            self.step()?;
        }
        Ok(())
    }
}

enum Choice {
    Fill(u64),
    Discard,
    Evict(usize),
}

/// Pure site selection for a greedy distribution: replays from `T = 0`.
pub fn greedy_site(distribution: Distribution, sites: u64, t: u64) -> Result<Option<u64>> {
    let mut curator = GreedyCurator::new(distribution, sites)?;
    if !distribution.has_ingest_capacity(sites, t) {
        return Err(Error::Capacity {
            algo: distribution.to_string(),
            sites,
            t,
        });
    }
    if t > REPLAY_CAP {
        return Err(Error::Resource { t, cap: REPLAY_CAP });
    }
    curator.advance_to(t)?;
    curator.step()
}
