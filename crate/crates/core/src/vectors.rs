//! Conformance vectors: `(algorithm, S, T, expected sites)` rows that pin
//! site selection down exactly, for checking other implementations.
//!
//! File format is CSV with header `algo,S,T,expected`; `expected` lists the
//! selected sites separated by spaces and is empty for a discard.

use std::collections::HashMap;
use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithm::Algorithm;
use crate::error::{Error, Result};
use crate::greedy::REPLAY_CAP;
use crate::selection::{Selector, SiteSelection};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestVector {
    pub algo: Algorithm,
    pub sites: u64,
    pub t: u64,
    pub expected: SiteSelection,
}

#[derive(Debug, Clone)]
pub struct GridConfig {
    pub algos: Vec<Algorithm>,
    pub max_sites: u64,
    /// Exclusive bound on `T` for the exhaustive grid.
    pub max_t: u64,
    /// Extra steady vectors at uniformly random depths, per site count.
    pub deep_samples: usize,
    pub seed: u64,
}

/// Exclusive bound on `T` a grid may reach for `algo` on `sites` sites.
fn t_limit(algo: &Algorithm, sites: u64, max_t: u64) -> u64 {
    if algo.is_steady_only() {
        return max_t;
    }
    // first T lacking capacity, by bisection
    let mut lo = 0u64;
    let mut hi = max_t.min(REPLAY_CAP);
    if algo.has_ingest_capacity(sites, hi.saturating_sub(1)) {
        return hi;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if algo.has_ingest_capacity(sites, mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

fn site_counts(algo: &Algorithm, max_sites: u64) -> Vec<u64> {
    match algo {
        Algorithm::Hybrid(spec) => {
            let n = spec.total_sites();
            if n <= max_sites { vec![n] } else { vec![] }
        }
        _ => std::iter::successors(Some(4u64), |s| Some(s * 2))
            .take_while(|&s| s <= max_sites)
            .collect(),
    }
}

pub fn generate(cfg: &GridConfig) -> Result<Vec<TestVector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for algo in &cfg.algos {
        for sites in site_counts(algo, cfg.max_sites) {
            let mut selector = Selector::new(algo, sites)?;
            for t in 0..t_limit(algo, sites, cfg.max_t) {
                out.push(TestVector {
                    algo: algo.clone(),
                    sites,
                    t,
                    expected: selector.select(t)?,
                });
            }
            if algo.is_steady_only() && cfg.deep_samples > 0 {
                let mut deep: Vec<u64> = (0..cfg.deep_samples).map(|_| rng.gen()).collect();
                deep.sort_unstable();
                for t in deep {
                    out.push(TestVector {
                        algo: algo.clone(),
                        sites,
                        t,
                        expected: selector.select(t)?,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn format_sites(sel: &SiteSelection) -> String {
    sel.sites()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_vectors<W: Write>(out: W, vectors: &[TestVector]) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["algo", "S", "T", "expected"])?;
    for v in vectors {
        wtr.write_record([
            v.algo.to_string(),
            v.sites.to_string(),
            v.t.to_string(),
            format_sites(&v.expected),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_vectors<R: Read>(input: R) -> Result<Vec<TestVector>> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["algo", "S", "T", "expected"] {
        return Err(Error::Parse(format!("unexpected vector header {headers:?}")));
    }
    let num = |s: &str, what: &str, line: usize| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("line {line}: bad {what} {s:?}")))
    };
    rdr.records()
        .enumerate()
        .map(|(i, rec)| {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            let line = i + 2;
            let expected = rec[3]
                .split_whitespace()
                .map(|s| num(s, "site", line))
                .collect::<Result<SiteSelection>>()?;
            Ok(TestVector {
                algo: rec[0].parse()?,
                sites: num(&rec[1], "S", line)?,
                t: num(&rec[2], "T", line)?,
                expected,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Zero-based position in the vector list.
    pub index: usize,
    pub vector: TestVector,
    pub actual: std::result::Result<SiteSelection, Error>,
}

/// Recomputes every vector and returns those that disagree.
pub fn check(vectors: &[TestVector]) -> Vec<Mismatch> {
    let mut selectors: HashMap<(String, u64), Result<Selector>> = HashMap::new();
    let mut bad = Vec::new();
    for (index, v) in vectors.iter().enumerate() {
        let selector = selectors
            .entry((v.algo.to_string(), v.sites))
            .or_insert_with(|| Selector::new(&v.algo, v.sites));
        let actual = match selector {
            Ok(s) => s.select(v.t),
            Err(e) => Err(e.clone()),
        };
        if actual.as_ref() != Ok(&v.expected) {
            bad.push(Mismatch {
                index,
                vector: v.clone(),
                actual,
            });
        }
    }
    bad
}
