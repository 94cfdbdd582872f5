//! Algorithm identifiers, hybrid layouts and the stream-length capacity rule.

use std::fmt;
use std::str::FromStr;

use crate::bits::site_log2;
use crate::error::{Error, Result};

/// One of the three base temporal distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distribution {
    /// Evenly spaced retention across the whole stream.
    Steady,
    /// Density thinned in proportion to depth; favors the stream's origin.
    Stretched,
    /// Density thinned in proportion to age; favors recent items.
    Tilted,
}

impl Distribution {
    pub const ALL: [Distribution; 3] = [Self::Steady, Self::Stretched, Self::Tilted];

    pub fn name(self) -> &'static str {
        match self {
            Self::Steady => "steady",
            Self::Stretched => "stretched",
            Self::Tilted => "tilted",
        }
    }

    /// Whether ingest `t` is legal on `sites` sites.
    ///
    /// Stretched and tilted cover streams of at most `2^S - 2` items, so item
    /// `t` (the `t + 1`-th item) is legal iff `t + 1 <= 2^S - 2`.
    pub fn has_ingest_capacity(self, sites: u64, t: u64) -> bool {
        match self {
            Self::Steady => true,
            Self::Stretched | Self::Tilted => {
                if sites >= 66 {
                    return true;
                }
                (t as u128) < (1u128 << sites) - 2
            }
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "steady" => Ok(Self::Steady),
            "stretched" => Ok(Self::Stretched),
            "tilted" => Ok(Self::Tilted),
            other => Err(Error::Parse(format!("unknown distribution {other:?}"))),
        }
    }
}

/// A contiguous block of sites curated by one base distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub distribution: Distribution,
    pub sites: u64,
}

/// Buffer space split between several base distributions.
///
/// Segments are laid out in order; segment `j` owns sites
/// `[offset_j, offset_j + sites_j)`. Each segment curates the full stream
/// independently, so one arrival may land in several segments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HybridSpec {
    segments: Vec<Segment>,
}

impl HybridSpec {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.len() < 2 {
            return Err(Error::Config(format!(
                "hybrid needs at least two segments, got {}",
                segments.len()
            )));
        }
        for seg in &segments {
            site_log2(seg.sites)?;
        }
        Ok(Self { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_sites(&self) -> u64 {
        self.segments.iter().map(|s| s.sites).sum()
    }

    /// Segments paired with their first site index.
    pub fn with_offsets(&self) -> impl Iterator<Item = (u64, Segment)> + '_ {
        self.segments.iter().scan(0u64, |offset, seg| {
            let here = *offset;
            *offset += seg.sites;
            Some((here, *seg))
        })
    }
}

impl fmt::Display for HybridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{}={}", seg.distribution, seg.sites)?;
        }
        Ok(())
    }
}

/// Which curation algorithm drives a surface.
///
/// Textual form: `steady`, `stretched`, `tilted`, or
/// `hybrid:<dist>=<sites>+<dist>=<sites>[+...]`, e.g. `hybrid:steady=4+tilted=4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Steady,
    Stretched,
    Tilted,
    Hybrid(HybridSpec),
}

impl Algorithm {
    pub fn single(&self) -> Option<Distribution> {
        match self {
            Self::Steady => Some(Distribution::Steady),
            Self::Stretched => Some(Distribution::Stretched),
            Self::Tilted => Some(Distribution::Tilted),
            Self::Hybrid(_) => None,
        }
    }

    /// Checks `sites` against this algorithm.
    ///
    /// Base distributions need a power of two in `[4, 2^20]`; a hybrid needs
    /// its segment sizes to sum to `sites`.
    pub fn validate(&self, sites: u64) -> Result<()> {
        match self {
            Self::Hybrid(spec) => {
                if spec.total_sites() != sites {
                    return Err(Error::Config(format!(
                        "hybrid segments sum to {} sites, surface has {sites}",
                        spec.total_sites()
                    )));
                }
                Ok(())
            }
            _ => site_log2(sites).map(|_| ()),
        }
    }

    /// Capacity predicate; a hybrid is the conjunction over its segments.
    pub fn has_ingest_capacity(&self, sites: u64, t: u64) -> bool {
        match self {
            Self::Hybrid(spec) => spec
                .segments()
                .iter()
                .all(|seg| seg.distribution.has_ingest_capacity(seg.sites, t)),
            _ => self.single().unwrap().has_ingest_capacity(sites, t),
        }
    }

    pub(crate) fn ensure_capacity(&self, sites: u64, t: u64) -> Result<()> {
        if self.has_ingest_capacity(sites, t) {
            Ok(())
        } else {
            Err(Error::Capacity {
                algo: self.to_string(),
                sites,
                t,
            })
        }
    }

    /// True when every segment uses steady selection, so lookup needs no replay.
    pub fn is_steady_only(&self) -> bool {
        match self {
            Self::Steady => true,
            Self::Hybrid(spec) => spec
                .segments()
                .iter()
                .all(|s| s.distribution == Distribution::Steady),
            _ => false,
        }
    }
}

impl From<Distribution> for Algorithm {
    fn from(d: Distribution) -> Self {
        match d {
            Distribution::Steady => Self::Steady,
            Distribution::Stretched => Self::Stretched,
            Distribution::Tilted => Self::Tilted,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Hybrid(spec) => write!(f, "hybrid:{spec}"),
            other => f.write_str(other.single().unwrap().name()),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_prefix("hybrid:") else {
            return s.parse::<Distribution>().map(Self::from);
        };
        let segments = body
            .split('+')
            .map(|part| {
                let (name, size) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("hybrid segment {part:?} lacks '='")))?;
                let sites = size
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad segment size {size:?}")))?;
                Ok(Segment {
                    distribution: name.parse()?,
                    sites,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        HybridSpec::new(segments).map(Self::Hybrid)
    }
}
