//! Brute-force conformance checkers.
//!
//! Everything here is computed from first principles (bit loops, direct
//! enumeration) and touches the selection code only through the public
//! [`assign`](crate::assign) interface, so it can serve as an independent
//! judge of it.

use crate::lookup::LookupTable;

/// Ingest times resident in a buffer, strictly increasing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RetainedSet {
    times: Vec<u64>,
}

impl RetainedSet {
    pub fn new<I: IntoIterator<Item = u64>>(times: I) -> Self {
        let mut times: Vec<u64> = times.into_iter().collect();
        times.sort_unstable();
        times.dedup();
        Self { times }
    }

    pub fn from_lookup(table: &LookupTable) -> Self {
        Self::new(table.entries().iter().flatten().copied())
    }

    pub fn times(&self) -> &[u64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn contains(&self, t: u64) -> bool {
        self.times.binary_search(&t).is_ok()
    }
}

fn bit_len(mut x: u64) -> u32 {
    let mut n = 0;
    while x > 0 {
        x >>= 1;
        n += 1;
    }
    n
}

fn log2_exact(sites: u64) -> u32 {
    assert!(sites.is_power_of_two(), "site count must be a power of two");
    bit_len(sites) - 1
}

/// Times steady curation must hold after `t` ingests: every `T' < t` with
/// `T' + 1` a multiple of `2^e`, where `e = max(bit_length(t) - log2(S), 0)`.
pub fn needed_set_steady(sites: u64, t: u64) -> Vec<u64> {
    let e = bit_len(t).saturating_sub(log2_exact(sites));
    let step = 1u64 << e;
    (1..)
        .map(|m| m * step - 1)
        .take_while(|&x| x < t)
        .collect()
}

/// Largest gap between consecutive members of `retained ∪ {-1, t}`.
pub fn max_gap(retained: &RetainedSet, t: u64) -> u64 {
    let mut prev: i128 = -1;
    let mut widest = 0u64;
    for &x in retained.times().iter().chain(std::iter::once(&t)) {
        let gap = (x as i128 - prev) as u64;
        widest = widest.max(gap);
        prev = x as i128;
    }
    widest
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapReport {
    pub pass: bool,
    pub max_gap: u64,
}

/// Passes iff the widest gap is at most `max(bound_num / bound_den, 1)`,
/// compared exactly.
pub fn check_gap_bound(retained: &RetainedSet, t: u64, bound_num: u128, bound_den: u128) -> GapReport {
    let widest = max_gap(retained, t);
    let pass = widest <= 1 || (widest as u128) * bound_den <= bound_num;
    GapReport {
        pass,
        max_gap: widest,
    }
}

/// Evenly-spaced contract: widest gap at most `max(2T/S, 1)`.
pub fn check_steady_gap(retained: &RetainedSet, sites: u64, t: u64) -> GapReport {
    check_gap_bound(retained, t, 2 * t as u128, sites as u128)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageMode {
    /// Windows over `T - T'`.
    Age,
    /// Windows over `T' + 1`.
    Depth,
}

/// Fraction of doubling windows `[2^j, 2^(j+1))` lying inside `[1, t]` that
/// contain at least one retained item, measured by age or by depth.
pub fn window_coverage_metric(retained: &RetainedSet, t: u64, mode: CoverageMode) -> f64 {
    assert!(t >= 2, "coverage needs t >= 2");
    let mut windows = 0u32;
    let mut covered = 0u32;
    let mut lo = 1u128;
    while 2 * lo - 1 <= t as u128 {
        let hi = 2 * lo;
        windows += 1;
        let hit = retained.times().iter().any(|&x| {
            let v = match mode {
                CoverageMode::Age => t as u128 - x as u128,
                CoverageMode::Depth => x as u128 + 1,
            };
            lo <= v && v < hi
        });
        if hit {
            covered += 1;
        }
        lo = hi;
    }
    covered as f64 / windows as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Counts may not grow toward the present (beyond slack).
    Stretched,
    /// Counts may not shrink toward the present (beyond slack).
    Tilted,
}

/// Retained counts in 8 equal windows over `[0, t)`.
pub fn window_counts(retained: &RetainedSet, t: u64) -> [u64; 8] {
    let mut counts = [0u64; 8];
    for &x in retained.times() {
        let w = (x as u128 * 8 / t as u128) as usize;
        counts[w.min(7)] += 1;
    }
    counts
}

/// Checks that window counts are monotone in `direction`, up to `slack`, over
/// every ordered pair of windows.
pub fn density_monotonicity_check(retained: &RetainedSet, t: u64, direction: Direction, slack: u64) -> bool {
    assert!(t >= 8, "monotonicity needs t >= 8");
    let counts = window_counts(retained, t);
    (0..8).all(|i| {
        (i + 1..8).all(|j| match direction {
            Direction::Stretched => counts[j] <= counts[i] + slack,
            Direction::Tilted => counts[i] <= counts[j] + slack,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> RetainedSet {
        RetainedSet::new(v.iter().copied())
    }

    #[test]
    fn needed_examples() {
        assert_eq!(needed_set_steady(4, 8), vec![3, 7]);
        assert_eq!(needed_set_steady(4, 3), vec![0, 1, 2]);
        assert_eq!(needed_set_steady(4, 1), vec![0]);
        assert_eq!(needed_set_steady(64, 64), (0..32).map(|m| 2 * m + 1).collect::<Vec<_>>());
    }

    #[test]
    fn needed_spacing_and_size() {
        for s in [4u64, 8, 16, 32] {
            for t in 1..2000u64 {
                let need = needed_set_steady(s, t);
                let e = bit_len(t).saturating_sub(log2_exact(s));
                for w in need.windows(2) {
                    assert_eq!(w[1] - w[0], 1 << e);
                }
                if t >= s {
                    assert!(need.len() as u64 >= s / 2 && (need.len() as u64) < s, "s={s} t={t}");
                }
            }
        }
    }

    #[test]
    fn gap_examples() {
        let r = check_steady_gap(&set(&[3, 7]), 4, 8);
        assert_eq!(r, GapReport { pass: true, max_gap: 4 });
        let r = check_steady_gap(&set(&[1, 3, 5, 7]), 4, 9);
        assert_eq!(r, GapReport { pass: true, max_gap: 2 });
        let r = check_steady_gap(&set(&[7]), 4, 8);
        assert_eq!(r, GapReport { pass: false, max_gap: 8 });
        assert!(check_steady_gap(&set(&[0]), 64, 1).pass);
    }

    #[test]
    fn coverage_examples() {
        let t = 100;
        let full = RetainedSet::new(0..t);
        assert_eq!(window_coverage_metric(&full, t, CoverageMode::Age), 1.0);
        assert_eq!(window_coverage_metric(&full, t, CoverageMode::Depth), 1.0);
        assert_eq!(window_coverage_metric(&set(&[]), t, CoverageMode::Age), 0.0);
        // t = 7: windows [1,2) [2,4) [4,8); depth of item 0 is 1, of item 5 is 6.
        assert!((window_coverage_metric(&set(&[0, 5]), 7, CoverageMode::Depth) - 2.0 / 3.0).abs() < 1e-12);
        // age of item 6 is 1, of item 5 is 2.
        assert!((window_coverage_metric(&set(&[5, 6]), 7, CoverageMode::Age) - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn monotonicity_examples() {
        let uniform = RetainedSet::new((0..64).step_by(2));
        assert!(density_monotonicity_check(&uniform, 64, Direction::Stretched, 0));
        assert!(density_monotonicity_check(&uniform, 64, Direction::Tilted, 0));
        assert!(density_monotonicity_check(&set(&[0, 1, 2, 3]), 64, Direction::Stretched, 2));
        assert!(!density_monotonicity_check(&set(&[60, 61, 62, 63]), 64, Direction::Stretched, 2));
        assert!(density_monotonicity_check(&set(&[60, 61, 62, 63]), 64, Direction::Tilted, 2));
    }
}
