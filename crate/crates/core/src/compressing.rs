//! Compressing circular buffer: steady curation by modular thinning.
//!
//! Items whose stream index is a multiple of the interval `m` are appended.
//! When the buffer is full, every second item is dropped (keeping indices
//! that are multiples of `2m`), the survivors are compacted to the front and
//! `m` doubles. Unlike a [`Surface`](crate::Surface), stored items move.

use crate::error::{Error, Result};
use crate::oracle::RetainedSet;

#[derive(Debug, Clone)]
pub struct CompressingBuffer<V> {
    capacity: usize,
    interval: u64,
    next: u64,
    items: Vec<(u64, V)>,
}

impl<V> CompressingBuffer<V> {
    /// Capacity must be even and at least 2.
    pub fn new(capacity: usize) -> Result<Self> {
        if capacity < 2 || !capacity.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "compressing buffer capacity must be even and >= 2, got {capacity}"
            )));
        }
        Ok(Self {
            capacity,
            interval: 1,
            next: 0,
            items: Vec::with_capacity(capacity),
        })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Current sampling interval `m`.
    pub fn interval(&self) -> u64 {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Stored `(stream index, value)` pairs, oldest first.
    pub fn items(&self) -> &[(u64, V)] {
        &self.items
    }

    fn compress(&mut self) {
        let keep = 2 * self.interval;
        self.items.retain(|(index, _)| index % keep == 0);
        self.interval = keep;
    }

    /// Offers item `t`; returns whether it was stored.
    ///
    /// Stream indices must arrive densely from 0.
    pub fn ingest(&mut self, t: u64, value: V) -> Result<bool> {
        if t != self.next {
            return Err(Error::Sequence {
                expected: self.next,
                got: t,
            });
        }
        self.next += 1;
        if !t.is_multiple_of(self.interval) {
            return Ok(false);
        }
        if self.items.len() == self.capacity {
            self.compress();
            if !t.is_multiple_of(self.interval) {
                return Ok(false);
            }
        }
        self.items.push((t, value));
        Ok(true)
    }

    pub fn retained(&self) -> RetainedSet {
        RetainedSet::new(self.items.iter().map(|&(t, _)| t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indices(buf: &CompressingBuffer<u64>) -> Vec<u64> {
        buf.items().iter().map(|&(t, _)| t).collect()
    }

    fn filled(n: usize, upto: u64) -> CompressingBuffer<u64> {
        let mut buf = CompressingBuffer::new(n).unwrap();
        for t in 0..upto {
            buf.ingest(t, t * 10).unwrap();
        }
        buf
    }

    #[test]
    fn constructor() {
        let b = CompressingBuffer::<u8>::new(4).unwrap();
        assert!(b.is_empty());
        assert_eq!(b.interval(), 1);
        assert!(CompressingBuffer::<u8>::new(3).is_err());
        assert!(CompressingBuffer::<u8>::new(0).is_err());
        assert_eq!(CompressingBuffer::<u8>::new(64).unwrap().interval(), 1);
    }

    #[test]
    fn hand_simulation() {
        let b = filled(4, 4);
        assert_eq!(indices(&b), [0, 1, 2, 3]);
        assert_eq!(b.interval(), 1);
        let b = filled(4, 5);
        assert_eq!(indices(&b), [0, 2, 4]);
        assert_eq!(b.interval(), 2);
        let b = filled(4, 8);
        assert_eq!(indices(&b), [0, 2, 4, 6]);
        let b = filled(4, 9);
        assert_eq!(indices(&b), [0, 4, 8]);
        assert_eq!(b.interval(), 4);
        assert_eq!(b.items()[1], (4, 40));
    }

    #[test]
    fn thousand_items() {
        let b = filled(64, 1000);
        assert_eq!(b.interval(), 16);
        assert_eq!(b.len(), 63);
        assert_eq!(indices(&b), (0..1000).step_by(16).collect::<Vec<_>>());
        assert!(filled(4, 0).retained().is_empty());
    }

    #[test]
    fn rejects_gaps() {
        let mut b = filled(4, 3);
        assert_eq!(b.ingest(4, 0), Err(Error::Sequence { expected: 3, got: 4 }));
        assert_eq!(b.ingest(1, 0), Err(Error::Sequence { expected: 3, got: 1 }));
    }

    #[test]
    fn items_relocate_on_compression() {
        let b = filled(4, 4);
        assert_eq!(b.items()[2].0, 2);
        let b = filled(4, 5);
        // index 4 now sits where index 2 used to be
        assert_eq!(b.items()[2].0, 4);
    }
}
