//! Keyed scheduling of embedding slots.
//!
//! A slot is one 8-bit channel sample. The stego-key seeds SplitMix64, which
//! drives a partial Fisher-Yates shuffle over `[0, total_slots)`. Only the
//! touched positions of the virtual identity array are materialized, so
//! drawing a few slots from a large image costs O(count).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Embedding secret: any 64-bit seed. Text form is 1 to 16 hex digits.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct StegoKey {
    seed: u64,
}

impl StegoKey {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Lowercase hex without leading zeros.
    pub fn to_canonical_string(&self) -> String {
        format!("{:x}", self.seed)
    }
}

impl FromStr for StegoKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > 16 || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::InvalidKey(
                "stego-key must be 1 to 16 hexadecimal digits",
            ));
        }
        u64::from_str_radix(s, 16)
            .map(Self::new)
            .map_err(|_| Error::InvalidKey("stego-key must be 1 to 16 hexadecimal digits"))
    }
}

impl fmt::Debug for StegoKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("StegoKey(<redacted>)")
    }
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Lazy slot schedule; yields distinct indices below `total_slots` until exhausted.
#[derive(Debug, Clone)]
pub struct SlotScheduler {
    rng: SplitMix64,
    total: u64,
    next: u64,
    swapped: HashMap<u64, u64>,
}

impl SlotScheduler {
    pub fn new(key: &StegoKey, total_slots: usize) -> Result<Self> {
        if total_slots == 0 {
            return Err(Error::InvalidParameter(
                "total_slots must be positive".into(),
            ));
        }
        Ok(Self {
            rng: SplitMix64::new(key.seed),
            total: total_slots as u64,
            next: 0,
            swapped: HashMap::new(),
        })
    }

    pub fn total_slots(&self) -> usize {
        self.total as usize
    }

    pub fn remaining(&self) -> usize {
        (self.total - self.next) as usize
    }

    fn value_at(&self, pos: u64) -> u64 {
        self.swapped.get(&pos).copied().unwrap_or(pos)
    }
}

impl Iterator for SlotScheduler {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.next == self.total {
            return None;
        }
        let i = self.next;
        let j = i + self.rng.next_u64() % (self.total - i);
        let at_j = self.value_at(j);
        if j != i {
            let at_i = self.value_at(i);
            self.swapped.insert(j, at_i);
        }
        // Position i is never read again.
        self.swapped.remove(&i);
        self.next += 1;
        Some(at_j as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining(), Some(self.remaining()))
    }
}

impl ExactSizeIterator for SlotScheduler {}

/// Distinct slot indices, each below `total_slots`, in scheduling order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotSequence {
    indices: Vec<usize>,
    total_slots: usize,
}

impl SlotSequence {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn total_slots(&self) -> usize {
        self.total_slots
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

pub fn slot_sequence(key: &StegoKey, total_slots: usize, count: usize) -> Result<SlotSequence> {
    if count > total_slots {
        return Err(Error::CapacityExceeded {
            required: count as u64,
            available: total_slots as u64,
        });
    }
    let scheduler = SlotScheduler::new(key, total_slots)?;
    Ok(SlotSequence {
        indices: scheduler.take(count).collect(),
        total_slots,
    })
}
