//! The fixed-capacity working buffer and its hex dump format.
//!
//! Dump layout: sites are packed in order into one bitstream, site 0 in the
//! most significant position, each item big-endian over `value_bits`. The
//! result is `S * value_bits / 4` lowercase hex digits. The counter `T` is
//! not part of the blob and travels beside it.

use std::fmt::Write as _;

use crate::algorithm::Algorithm;
use crate::error::{Error, Result};
use crate::lookup::lookup;
use crate::selection::{Selector, SiteSelection};

/// Supported item widths in bits.
pub const VALUE_BITS: [u32; 5] = [1, 8, 16, 32, 64];

pub fn check_value_bits(bits: u32) -> Result<()> {
    if VALUE_BITS.contains(&bits) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "value width must be one of {VALUE_BITS:?} bits, got {bits}"
        )))
    }
}

fn value_mask(bits: u32) -> u64 {
    if bits == 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Number of hex digits in the dump of `sites` items of `bits` each.
pub fn hex_len(sites: u64, bits: u32) -> Result<usize> {
    let total = sites * bits as u64;
    if !total.is_multiple_of(4) {
        return Err(Error::Config(format!(
            "{sites} items of {bits} bits do not fill whole hex digits"
        )));
    }
    Ok((total / 4) as usize)
}

pub fn encode_hex(slots: &[u64], bits: u32) -> String {
    let mut out = String::with_capacity(slots.len() * bits as usize / 4);
    if bits == 1 {
        for chunk in slots.chunks(4) {
            let nibble = chunk
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &v)| acc | ((v as u32 & 1) << (3 - i)));
            out.push(char::from_digit(nibble, 16).unwrap());
        }
    } else {
        let width = bits as usize / 4;
        for &v in slots {
            write!(out, "{v:0width$x}").unwrap();
        }
    }
    out
}

pub fn decode_hex(hex: &str, sites: u64, bits: u32) -> Result<Vec<u64>> {
    check_value_bits(bits)?;
    let expected = hex_len(sites, bits)?;
    if hex.len() != expected {
        return Err(Error::Parse(format!(
            "hex blob has {} digits, expected {expected} for {sites} x {bits}-bit items",
            hex.len()
        )));
    }
    let nibbles = hex
        .chars()
        .map(|c| {
            c.to_digit(16)
                .map(|d| d as u64)
                .ok_or_else(|| Error::Parse(format!("non-hex digit {c:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if bits == 1 {
        Ok(nibbles
            .iter()
            .flat_map(|&n| (0..4).rev().map(move |i| (n >> i) & 1))
            .collect())
    } else {
        Ok(nibbles
            .chunks(bits as usize / 4)
            .map(|c| c.iter().fold(0u64, |acc, &n| (acc << 4) | n))
            .collect())
    }
}

/// A fixed-capacity buffer curated by one algorithm.
#[derive(Debug, Clone)]
pub struct Surface {
    selector: Selector,
    t: u64,
    value_bits: u32,
    slots: Vec<u64>,
    written: Vec<bool>,
}

impl Surface {
    pub fn new(algo: Algorithm, sites: u64, value_bits: u32) -> Result<Self> {
        check_value_bits(value_bits)?;
        hex_len(sites, value_bits)?;
        let selector = Selector::new(&algo, sites)?;
        Ok(Self {
            selector,
            t: 0,
            value_bits,
            slots: vec![0; sites as usize],
            written: vec![false; sites as usize],
        })
    }

    /// Rebuilds a surface from a dump taken at counter `t`.
    ///
    /// Written flags are recovered by lookup: a site counts as written iff
    /// some ingest before `t` selected it.
    pub fn from_hex(algo: Algorithm, sites: u64, t: u64, value_bits: u32, hex: &str) -> Result<Self> {
        let mut surface = Self::new(algo, sites, value_bits)?;
        surface.slots = decode_hex(hex, sites, value_bits)?;
        let table = lookup(surface.algorithm(), sites, t)?;
        surface.written = table.entries().iter().map(Option::is_some).collect();
        surface.t = t;
        Ok(surface)
    }

    /// Stores `value` at the sites selected for the current `T`, then
    /// advances `T`. On error the surface is left untouched.
    pub fn ingest(&mut self, value: u64) -> Result<SiteSelection> {
        if value & !value_mask(self.value_bits) != 0 {
            return Err(Error::Domain {
                value,
                bits: self.value_bits,
            });
        }
        let selection = self.selector.select(self.t)?;
        for &k in &selection {
            self.slots[k as usize] = value;
            self.written[k as usize] = true;
        }
        self.t += 1;
        Ok(selection)
    }

    pub fn to_hex(&self) -> String {
        encode_hex(&self.slots, self.value_bits)
    }

    pub fn algorithm(&self) -> &Algorithm {
        self.selector.algorithm()
    }

    pub fn sites(&self) -> u64 {
        self.selector.sites()
    }

    /// Number of items ingested so far.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn value_bits(&self) -> u32 {
        self.value_bits
    }

    pub fn slots(&self) -> &[u64] {
        &self.slots
    }

    pub fn written(&self) -> &[bool] {
        &self.written
    }

    pub fn has_ingest_capacity(&self) -> bool {
        self.algorithm().has_ingest_capacity(self.sites(), self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor() {
        let s = Surface::new(Algorithm::Steady, 4, 8).unwrap();
        assert_eq!(s.t(), 0);
        assert_eq!(s.slots(), &[0, 0, 0, 0]);
        assert_eq!(s.written(), &[false; 4]);
        assert!(matches!(Surface::new(Algorithm::Tilted, 3, 8), Err(Error::Config(_))));
        assert!(matches!(Surface::new(Algorithm::Steady, 4, 4), Err(Error::Config(_))));
        let hybrid = "hybrid:steady=4+tilted=4".parse().unwrap();
        assert!(Surface::new(hybrid, 8, 1).is_ok());
    }

    #[test]
    fn steady_ingest_sequence() {
        let mut s = Surface::new(Algorithm::Steady, 4, 8).unwrap();
        for v in 10..14 {
            s.ingest(v).unwrap();
        }
        assert_eq!(s.slots(), &[10, 11, 12, 13]);
        assert!(s.ingest(14).unwrap().is_discard());
        assert_eq!(s.slots(), &[10, 11, 12, 13]);
        assert_eq!(s.t(), 5);

        let mut s = Surface::new(Algorithm::Steady, 4, 8).unwrap();
        for t in 0..8u64 {
            s.ingest(t % 256).unwrap();
        }
        assert_eq!(s.slots(), &[5, 1, 7, 3]);
        assert_eq!(s.to_hex(), "05010703");
    }

    #[test]
    fn ingest_errors_leave_state() {
        let mut s = Surface::new(Algorithm::Steady, 4, 8).unwrap();
        assert!(matches!(s.ingest(256), Err(Error::Domain { value: 256, bits: 8 })));
        assert_eq!(s.t(), 0);
        let mut s = Surface::new(Algorithm::Tilted, 4, 1).unwrap();
        for _ in 0..14 {
            s.ingest(1).unwrap();
        }
        let before = s.slots().to_vec();
        assert!(matches!(s.ingest(1), Err(Error::Capacity { .. })));
        assert_eq!(s.t(), 14);
        assert_eq!(s.slots(), &before[..]);
    }

    #[test]
    fn hex_examples() {
        assert_eq!(encode_hex(&[5, 1, 7, 3], 8), "05010703");
        assert_eq!(encode_hex(&[1, 0, 1, 1, 0, 0, 0, 0], 1), "b0");
        assert_eq!(encode_hex(&[0; 4], 16), "0000000000000000");
        assert_eq!(encode_hex(&[0xdead_beef, 1], 32), "deadbeef00000001");
        assert_eq!(encode_hex(&[u64::MAX; 4], 64).len(), 64);
    }

    #[test]
    fn from_hex_examples() {
        let s = Surface::from_hex(Algorithm::Steady, 4, 8, 8, "05010703").unwrap();
        assert_eq!(s.slots(), &[5, 1, 7, 3]);
        assert_eq!(s.written(), &[true; 4]);
        assert_eq!(s.t(), 8);
        assert!(matches!(
            Surface::from_hex(Algorithm::Steady, 4, 8, 8, "0501"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            Surface::from_hex(Algorithm::Steady, 4, 8, 8, "ZZ010703"),
            Err(Error::Parse(_))
        ));
        let s = Surface::from_hex(Algorithm::Steady, 4, 2, 8, "0a0b0000").unwrap();
        assert_eq!(s.written(), &[true, true, false, false]);
        assert_eq!(decode_hex("B0", 8, 1).unwrap(), vec![1, 0, 1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn resumes_after_reload() {
        let algo: Algorithm = "tilted".parse().unwrap();
        let mut live = Surface::new(algo.clone(), 8, 16).unwrap();
        for v in 0..40 {
            live.ingest(v).unwrap();
        }
        let mut reloaded = Surface::from_hex(algo, 8, live.t(), 16, &live.to_hex()).unwrap();
        for v in 40..100 {
            assert_eq!(live.ingest(v).unwrap(), reloaded.ingest(v).unwrap());
        }
        assert_eq!(live.slots(), reloaded.slots());
    }
}
