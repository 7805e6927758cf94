//! Distortion and randomness measurements.

use std::fmt;

use serde::Serialize;

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::image_io::ImageBuffer;

pub const PEAK: f64 = 255.0;
pub const MIN_TEST_BITS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionReport {
    pub mse: f64,
    /// `+inf` for identical images; serialized as `null` in JSON.
    pub psnr_db: f64,
    pub changed_bytes: u64,
    /// Index 0 is the least significant bit plane.
    pub changed_bits_per_plane: [u64; 8],
}

impl DistortionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for DistortionReport {
    /// One `key=value` pair per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mse={:.6}", self.mse)?;
        if self.psnr_db.is_infinite() {
            writeln!(f, "psnr_db=inf")?;
        } else {
            writeln!(f, "psnr_db={:.4}", self.psnr_db)?;
        }
        writeln!(f, "changed_bytes={}", self.changed_bytes)?;
        let planes: Vec<String> = self
            .changed_bits_per_plane
            .iter()
            .map(u64::to_string)
            .collect();
        write!(f, "changed_bits_per_plane={}", planes.join(","))
    }
}

pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK * PEAK / mse).log10()
    }
}

pub fn distortion(cover: &ImageBuffer, stego: &ImageBuffer) -> Result<DistortionReport> {
    if cover.shape() != stego.shape() {
        return Err(Error::ShapeMismatch {
            left: cover.shape(),
            right: stego.shape(),
        });
    }
    let mut squared: u64 = 0;
    let mut changed_bytes = 0;
    let mut planes = [0u64; 8];
    for (&a, &b) in cover.samples().iter().zip(stego.samples()) {
        let diff = a.abs_diff(b) as u64;
        squared += diff * diff;
        let x = a ^ b;
        if x != 0 {
            changed_bytes += 1;
            for (j, plane) in planes.iter_mut().enumerate() {
                *plane += ((x >> j) & 1) as u64;
            }
        }
    }
    let mse = squared as f64 / cover.samples().len() as f64;
    Ok(DistortionReport {
        mse,
        psnr_db: psnr_from_mse(mse),
        changed_bytes,
        changed_bits_per_plane: planes,
    })
}

fn require_bits(bits: &BitSequence) -> Result<()> {
    if bits.len() < MIN_TEST_BITS {
        return Err(Error::TooFewBits {
            got: bits.len(),
            min: MIN_TEST_BITS,
        });
    }
    Ok(())
}

/// Frequency test: `(ones - n/2) / sqrt(n/4)`.
pub fn monobit_test(bits: &BitSequence) -> Result<f64> {
    require_bits(bits)?;
    let n = bits.len() as f64;
    let ones = bits.count_ones() as f64;
    Ok((ones - n / 2.0) / (n / 4.0).sqrt())
}

/// Wald-Wolfowitz runs test. Requires the ones fraction to lie in (0.4, 0.6).
pub fn runs_test(bits: &BitSequence) -> Result<f64> {
    require_bits(bits)?;
    let n = bits.len() as f64;
    let p = bits.count_ones() as f64 / n;
    if !(p > 0.4 && p < 0.6) {
        return Err(Error::PrerequisiteFailed(format!(
            "ones fraction {p:.6} outside (0.4, 0.6)"
        )));
    }
    let s = bits.as_slice();
    let runs = 1 + s.windows(2).filter(|w| w[0] != w[1]).count();
    let m = 2.0 * n * p * (1.0 - p);
    let expected = m + 1.0;
    let variance = m * (m - 1.0) / (n - 1.0);
    Ok((runs as f64 - expected) / variance.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomnessReport {
    pub n_bits: usize,
    pub ones_fraction: f64,
    pub monobit_z: f64,
    pub runs_z: f64,
}

impl RandomnessReport {
    pub fn from_bits(bits: &BitSequence) -> Result<Self> {
        Ok(Self {
            n_bits: bits.len(),
            ones_fraction: bits.count_ones() as f64 / bits.len().max(1) as f64,
            monobit_z: monobit_test(bits)?,
            runs_z: runs_test(bits)?,
        })
    }

    pub fn passes(&self, z_limit: f64) -> bool {
        self.monobit_z.abs() <= z_limit && self.runs_z.abs() <= z_limit
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for RandomnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n_bits={}", self.n_bits)?;
        writeln!(f, "ones_fraction={:.6}", self.ones_fraction)?;
        writeln!(f, "monobit_z={:.4}", self.monobit_z)?;
        write!(f, "runs_z={:.4}", self.runs_z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_io::Channels;
    use proptest::prelude::*;

    fn alternating(n: usize) -> BitSequence {
        (0..n).map(|i| i % 2 == 1).collect()
    }

    fn gray(samples: Vec<u8>) -> ImageBuffer {
        let n = samples.len() as u32;
        ImageBuffer::new(n, 1, Channels::Gray, samples).unwrap()
    }

    #[test]
    fn identical_images() {
        let img = gray(vec![7; 64]);
        let r = distortion(&img, &img).unwrap();
        assert_eq!(r.mse, 0.0);
        assert!(r.psnr_db.is_infinite() && r.psnr_db > 0.0);
        assert_eq!(r.changed_bytes, 0);
        assert_eq!(r.changed_bits_per_plane, [0; 8]);
        assert!(r.to_string().contains("psnr_db=inf"));
        assert!(r.to_json().contains("\"psnr_db\":null"));
    }

    #[test]
    fn single_unit_difference() {
        let n = 1000;
        let a = gray(vec![100; n]);
        let mut s = vec![100; n];
        s[17] = 101;
        let r = distortion(&a, &gray(s)).unwrap();
        assert_eq!(r.mse, 1.0 / n as f64);
        assert!((r.psnr_db - 10.0 * (65025.0 * n as f64).log10()).abs() < 1e-9);
        assert_eq!(r.changed_bytes, 1);
        assert_eq!(r.changed_bits_per_plane, [1, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn plane_counts_follow_xor() {
        // 0b0111 -> 0b1000 flips four planes.
        let r = distortion(&gray(vec![7]), &gray(vec![8])).unwrap();
        assert_eq!(r.changed_bits_per_plane, [1, 1, 1, 1, 0, 0, 0, 0]);
        assert_eq!(r.mse, 1.0);
    }

    #[test]
    fn shape_mismatch() {
        let a = gray(vec![0; 4]);
        let b = ImageBuffer::new(2, 2, Channels::Gray, vec![0; 4]).unwrap();
        assert!(matches!(
            distortion(&a, &b),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn monobit_examples() {
        assert_eq!(monobit_test(&alternating(1000)).unwrap(), 0.0);
        let ones: BitSequence = vec![true; 100].into();
        assert_eq!(monobit_test(&ones).unwrap(), 10.0);
        assert!(matches!(
            monobit_test(&alternating(99)),
            Err(Error::TooFewBits { got: 99, min: 100 })
        ));
    }

    #[test]
    fn runs_extremes() {
        assert!(runs_test(&alternating(1000)).unwrap() > 20.0);
        let blocks: BitSequence = (0..1000).map(|i| i >= 500).collect();
        assert!(runs_test(&blocks).unwrap() < -20.0);
        let skewed: BitSequence = (0..1000).map(|i| i % 10 == 0).collect();
        assert!(matches!(
            runs_test(&skewed),
            Err(Error::PrerequisiteFailed(_))
        ));
    }

    #[test]
    fn runs_matches_hand_count() {
        // 0011 0101 1100 ... repeated: count runs by a separate scan.
        let pattern = [0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 0, 0];
        let bits: BitSequence = (0..1200).map(|i| pattern[i % 12] == 1).collect();
        let mut runs = 0;
        let mut prev = None;
        for b in bits.iter() {
            if prev != Some(b) {
                runs += 1;
                prev = Some(b);
            }
        }
        let (n, p) = (1200.0f64, 0.5f64);
        let m = 2.0 * n * p * (1.0 - p);
        let z = (runs as f64 - (m + 1.0)) / (m * (m - 1.0) / (n - 1.0)).sqrt();
        assert!((runs_test(&bits).unwrap() - z).abs() < 1e-12);
    }

    #[test]
    fn randomness_report_format() {
        let r = RandomnessReport::from_bits(&alternating(1000)).unwrap();
        assert_eq!(r.ones_fraction, 0.5);
        assert!(r.to_string().contains("ones_fraction=0.500000"));
        assert!(r.to_json().starts_with('{'));
    }

    proptest! {
        #[test]
        fn symmetric_and_consistent(pairs in proptest::collection::vec((any::<u8>(), any::<u8>()), 1..300)) {
            let (a, b): (Vec<u8>, Vec<u8>) = pairs.into_iter().unzip();
            let (a, b) = (gray(a), gray(b));
            let ab = distortion(&a, &b).unwrap();
            prop_assert_eq!(&ab, &distortion(&b, &a).unwrap());
            prop_assert_eq!(ab.mse == 0.0, ab.changed_bytes == 0);
            prop_assert_eq!(ab.psnr_db.is_infinite(), ab.changed_bytes == 0);
            prop_assert!(ab.changed_bits_per_plane.iter().sum::<u64>() >= ab.changed_bytes);
        }

        #[test]
        fn psnr_never_rises_with_more_changes(base in proptest::collection::vec(any::<u8>(), 2..200), idx in any::<prop::sample::Index>()) {
            let cover = gray(base.clone());
            let mut one = base.clone();
            let i = idx.index(base.len());
            one[i] ^= 1;
            let mut two = one.clone();
            let j = (i + 1) % base.len();
            two[j] ^= 1;
            let p1 = distortion(&cover, &gray(one)).unwrap().psnr_db;
            let p2 = distortion(&cover, &gray(two)).unwrap().psnr_db;
            prop_assert!(p2 <= p1);
        }
    }
}
