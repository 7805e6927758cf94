//! Bit sequences shared by the keystream, the cipher and the embedder.
//!
//! Bytes are always viewed MSB-first.

use std::fmt;
use std::ops::Index;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSequence {
    bits: Vec<bool>,
}

impl BitSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bits: Vec::with_capacity(n),
        }
    }

    /// Unpacks bytes MSB-first; the result has exactly `8 * bytes.len()` bits.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut bits = Vec::with_capacity(bytes.len() * 8);
        for &b in bytes {
            for shift in (0..8).rev() {
                bits.push((b >> shift) & 1 == 1);
            }
        }
        Self { bits }
    }

    /// Packs MSB-first. A trailing partial byte is zero-padded in its low bits.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.bits
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)))
            })
            .collect()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_prefix_of(&self, other: &BitSequence) -> bool {
        other.bits.starts_with(&self.bits)
    }

    /// Number of positions where the two sequences differ, or `None` if the
    /// lengths do not match.
    pub fn hamming_distance(&self, other: &BitSequence) -> Option<usize> {
        (self.len() == other.len()).then(|| {
            self.iter()
                .zip(other.iter())
                .filter(|(a, b)| a != b)
                .count()
        })
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }
}

impl Index<usize> for BitSequence {
    type Output = bool;

    fn index(&self, i: usize) -> &bool {
        &self.bits[i]
    }
}

impl FromIterator<bool> for BitSequence {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

impl From<Vec<bool>> for BitSequence {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSequence({self})")
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BitSequence {
    type Err = crate::Error;

    /// Parses a string of `0`/`1` characters.
    fn from_str(s: &str) -> crate::Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(crate::Error::InvalidParameter(format!(
                    "bit string contains {c:?}"
                ))),
            })
            .collect()
    }
}

/// Fraction of differing bits between two equal-length byte strings.
pub fn normalized_bit_distance(a: &[u8], b: &[u8]) -> Option<f64> {
    if a.len() != b.len() || a.is_empty() {
        return None;
    }
    let differing: u32 = a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum();
    Some(differing as f64 / (8 * a.len()) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn msb_first_unpacking() {
        let bits = BitSequence::from_bytes(&[0x41, 0x80]);
        assert_eq!(bits.to_string(), "0100000110000000");
        assert_eq!(bits.len(), 16);
        assert!(bits[1]);
        assert!(!bits[0]);
    }

    #[test]
    fn partial_byte_is_zero_padded() {
        let bits: BitSequence = "101".parse().unwrap();
        assert_eq!(bits.to_bytes(), vec![0b1010_0000]);
    }

    #[test]
    fn rejects_non_binary_characters() {
        assert!("10a1".parse::<BitSequence>().is_err());
    }

    #[test]
    fn distance_requires_equal_lengths() {
        assert_eq!(normalized_bit_distance(&[0xff], &[0x00]), Some(1.0));
        assert_eq!(normalized_bit_distance(&[0xf0], &[0x00]), Some(0.5));
        assert_eq!(normalized_bit_distance(&[0xf0], &[0x00, 1]), None);
    }

    proptest! {
        #[test]
        fn byte_bit_round_trip(bytes in proptest::collection::vec(any::<u8>(), 0..256)) {
            let bits = BitSequence::from_bytes(&bytes);
            prop_assert_eq!(bits.len(), 8 * bytes.len());
            prop_assert_eq!(bits.to_bytes(), bytes);
        }
    }
}
