//! k-LSB embedding of a length-framed payload into keyed byte slots.
//!
//! Wire layout: the frame is a 32-bit big-endian byte count followed by the
//! body, read as one MSB-first bit stream. The stream is cut into k-bit
//! groups; group `i` replaces the k low bits of sample `S[i]`, where `S` is
//! the stego-key slot schedule over all samples. The last group is
//! zero-padded in its low bits. Extraction is blind: it needs only the
//! stego image, the stego-key and k.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::image_io::ImageBuffer;
use crate::scheduler::{SlotScheduler, StegoKey};

pub const HEADER_BITS: usize = 32;

/// Bits replaced per slot. Pre-shared between sender and receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StegoParams {
    k: u8,
}

impl StegoParams {
    pub fn new(k: u8) -> Result<Self> {
        if (1..=4).contains(&k) {
            Ok(Self { k })
        } else {
            Err(Error::InvalidParameter(format!(
                "k must be 1, 2, 3 or 4, got {k}"
            )))
        }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    fn mask(&self) -> u8 {
        (1u8 << self.k) - 1
    }
}

impl Default for StegoParams {
    fn default() -> Self {
        Self { k: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayloadFrame<'a> {
    body: &'a [u8],
}

impl<'a> PayloadFrame<'a> {
    pub fn new(body: &'a [u8]) -> Result<Self> {
        if u32::try_from(body.len()).is_err() {
            return Err(Error::CapacityExceeded {
                required: body.len() as u64,
                available: u32::MAX as u64,
            });
        }
        Ok(Self { body })
    }

    pub fn length_header(&self) -> u32 {
        self.body.len() as u32
    }

    pub fn bit_len(&self) -> usize {
        HEADER_BITS + 8 * self.body.len()
    }

    pub fn to_bits(&self) -> BitSequence {
        let mut bytes = Vec::with_capacity(4 + self.body.len());
        bytes.extend_from_slice(&self.length_header().to_be_bytes());
        bytes.extend_from_slice(self.body);
        BitSequence::from_bytes(&bytes)
    }
}

/// Largest ciphertext, in bytes, that fits after the header.
pub fn capacity(img: &ImageBuffer, params: StegoParams) -> u64 {
    let bits = img.slot_count() as u64 * params.k as u64;
    let bytes = bits.saturating_sub(HEADER_BITS as u64) / 8;
    bytes.min(u32::MAX as u64)
}

pub fn embed(
    cover: &ImageBuffer,
    ciphertext: &[u8],
    key: &StegoKey,
    params: StegoParams,
) -> Result<ImageBuffer> {
    let available = capacity(cover, params);
    let header_fits = cover.slot_count() * params.k as usize >= HEADER_BITS;
    if !header_fits || ciphertext.len() as u64 > available {
        return Err(Error::CapacityExceeded {
            required: ciphertext.len() as u64,
            available,
        });
    }
    let frame = PayloadFrame::new(ciphertext)?.to_bits();
    let k = params.k as usize;
    let mut stego = cover.clone();
    let samples = stego.samples_mut();
    let slots = SlotScheduler::new(key, samples.len())?;
    for (group, slot) in frame.as_slice().chunks(k).zip(slots) {
        let value = group
            .iter()
            .chain(std::iter::repeat(&false))
            .take(k)
            .fold(0u8, |acc, &b| (acc << 1) | b as u8);
        samples[slot] = (samples[slot] & !params.mask()) | value;
    }
    Ok(stego)
}

/// Streams k-bit groups from scheduled slots as single bits.
struct SlotBitReader<'a> {
    samples: &'a [u8],
    slots: SlotScheduler,
    k: u8,
    current: u8,
    left: u8,
}

impl SlotBitReader<'_> {
    fn read_bit(&mut self) -> Option<bool> {
        if self.left == 0 {
            let slot = self.slots.next()?;
            self.current = self.samples[slot];
            self.left = self.k;
        }
        self.left -= 1;
        Some((self.current >> self.left) & 1 == 1)
    }

    fn read_bytes(&mut self, n: usize) -> Option<Vec<u8>> {
        (0..n)
            .map(|_| (0..8).try_fold(0u8, |acc, _| Some((acc << 1) | self.read_bit()? as u8)))
            .collect()
    }
}

pub fn extract(stego: &ImageBuffer, key: &StegoKey, params: StegoParams) -> Result<Vec<u8>> {
    let mut reader = SlotBitReader {
        samples: stego.samples(),
        slots: SlotScheduler::new(key, stego.slot_count())?,
        k: params.k,
        current: 0,
        left: 0,
    };
    let header = reader.read_bytes(4).ok_or(Error::MalformedHeader)?;
    let length = u32::from_be_bytes([header[0], header[1], header[2], header[3]]) as u64;
    if length > capacity(stego, params) {
        return Err(Error::MalformedHeader);
    }
    reader
        .read_bytes(length as usize)
        .ok_or(Error::MalformedHeader)
}
