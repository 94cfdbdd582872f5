//! Site-selection throughput across buffer sizes and stream depths.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use crate::algorithm::Algorithm;
use crate::bits::site_log2;
use crate::error::{Error, Result};
use crate::selection::Selector;
use crate::steady::steady_site_log2;

/// Half-open range of ingest times `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthRange {
    pub lo: u64,
    pub hi: u64,
}

impl std::str::FromStr for DepthRange {
    type Err = Error;

    /// Parses `lo:hi`.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("depth range {s:?} is not lo:hi")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad depth bound {x:?}")))
        };
        Ok(Self {
            lo: parse(lo)?,
            hi: parse(hi)?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algo: Algorithm,
    pub sizes: Vec<u64>,
    pub depths: Vec<DepthRange>,
    pub replicates: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algo: String,
    pub sites: u64,
    pub t_lo: u64,
    pub t_hi: u64,
    pub items: u64,
    pub total_ns: u128,
    pub ns_per_item: f64,
    pub replicate: usize,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        if self.sizes.is_empty() || self.depths.is_empty() {
            return Err(Error::Config("need at least one size and one depth range".into()));
        }
        for d in &self.depths {
            if d.lo >= d.hi {
                return Err(Error::Config(format!("empty depth range {}:{}", d.lo, d.hi)));
            }
        }
        for &s in &self.sizes {
            self.algo.validate(s)?;
            for d in &self.depths {
                self.algo.ensure_capacity(s, d.hi - 1)?;
            }
        }
        Ok(())
    }
}

fn time_steady(log2_sites: u32, range: DepthRange) -> u128 {
    let start = Instant::now();
    let mut acc = 0u64;
    for t in range.lo..range.hi {
        acc = acc.wrapping_add(steady_site_log2(log2_sites, black_box(t)).unwrap_or(u64::MAX));
    }
    black_box(acc);
    start.elapsed().as_nanos()
}

fn time_selector(selector: &mut Selector, range: DepthRange) -> Result<u128> {
    selector.seek(range.lo)?;
    let start = Instant::now();
    let mut acc = 0usize;
    for t in range.lo..range.hi {
        acc = acc.wrapping_add(selector.select(black_box(t))?.len());
    }
    black_box(acc);
    Ok(start.elapsed().as_nanos())
}

/// Runs every `(size, depth, replicate)` cell, replicate-major so that slow
/// drift in machine state is spread over all cells.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.sizes.len() * cfg.depths.len() * cfg.replicates);
    for replicate in 0..cfg.replicates {
        for &sites in &cfg.sizes {
            let mut selector = match cfg.algo {
                Algorithm::Steady => None,
                _ => Some(Selector::new(&cfg.algo, sites)?),
            };
            for &range in &cfg.depths {
                let total_ns = match selector.as_mut() {
                    None => time_steady(site_log2(sites)?, range),
                    Some(sel) => time_selector(sel, range)?,
                };
                let items = range.hi - range.lo;
                rows.push(BenchRow {
                    algo: cfg.algo.to_string(),
                    sites,
                    t_lo: range.lo,
                    t_hi: range.hi,
                    items,
                    total_ns,
                    ns_per_item: total_ns as f64 / items as f64,
                    replicate,
                });
            }
        }
    }
    rows.sort_by_key(|r| (r.sites, r.t_lo, r.replicate));
    Ok(rows)
}

pub fn write_bench<W: Write>(out: W, rows: &[BenchRow]) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["algo", "S", "T_lo", "T_hi", "items", "total_ns", "ns_per_item", "replicate"])?;
    for r in rows {
        wtr.write_record([
            r.algo.clone(),
            r.sites.to_string(),
            r.t_lo.to_string(),
            r.t_hi.to_string(),
            r.items.to_string(),
            r.total_ns.to_string(),
            format!("{:.3}", r.ns_per_item),
            r.replicate.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Mean ns/item over rows matching `keep`.
pub fn mean_ns_per_item<F: Fn(&BenchRow) -> bool>(rows: &[BenchRow], keep: F) -> f64 {
    let picked: Vec<f64> = rows.iter().filter(|r| keep(r)).map(|r| r.ns_per_item).collect();
    picked.iter().sum::<f64>() / picked.len() as f64
}
