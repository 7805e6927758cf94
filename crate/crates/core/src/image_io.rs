//! Lossless raster I/O.
//!
//! PNG and BMP are accepted on input, PNG is always written. Samples are
//! copied byte for byte: no gamma, ICC or color conversion is applied.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use image::codecs::png::{CompressionType, FilterType, PngEncoder};
use image::{DynamicImage, ImageEncoder, ImageFormat, ImageReader};
use log::warn;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channels {
    Gray = 1,
    Rgb = 3,
}

impl Channels {
    pub fn count(self) -> usize {
        self as usize
    }
}

/// Row-major, channel-interleaved 8-bit raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    channels: Channels,
    samples: Vec<u8>,
}

impl ImageBuffer {
    pub fn new(width: u32, height: u32, channels: Channels, samples: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(
                "image dimensions must be positive".into(),
            ));
        }
        let expected = width as usize * height as usize * channels.count();
        if samples.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "expected {expected} samples for {width}x{height}x{}, got {}",
                channels.count(),
                samples.len()
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            samples,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> Channels {
        self.channels
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [u8] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }

    /// Number of embedding slots (one per channel sample).
    pub fn slot_count(&self) -> usize {
        self.samples.len()
    }

    pub fn shape(&self) -> (u32, u32, u8) {
        (self.width, self.height, self.channels.count() as u8)
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)?
        .with_guessed_format()
        .map_err(Error::Io)?;
    match reader.format() {
        Some(ImageFormat::Png | ImageFormat::Bmp) => {}
        Some(other) => return Err(Error::UnsupportedFormat(Some(format!("{other:?}")))),
        None => return Err(Error::UnsupportedFormat(None)),
    }
    let decoded = reader.decode().map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    from_dynamic(decoded, path)
}

fn from_dynamic(img: DynamicImage, path: &Path) -> Result<ImageBuffer> {
    let (width, height) = (img.width(), img.height());
    let (channels, samples) = match img {
        DynamicImage::ImageLuma8(buf) => (Channels::Gray, buf.into_raw()),
        DynamicImage::ImageRgb8(buf) => (Channels::Rgb, buf.into_raw()),
        DynamicImage::ImageLumaA8(buf) => {
            warn!("{}: dropping alpha channel", path.display());
            (
                Channels::Gray,
                buf.into_raw().chunks_exact(2).map(|p| p[0]).collect(),
            )
        }
        DynamicImage::ImageRgba8(buf) => {
            warn!("{}: dropping alpha channel", path.display());
            (
                Channels::Rgb,
                buf.into_raw()
                    .chunks_exact(4)
                    .flat_map(|p| [p[0], p[1], p[2]])
                    .collect(),
            )
        }
        other => return Err(Error::UnsupportedDepth(format!("{:?}", other.color()))),
    };
    ImageBuffer::new(width, height, channels, samples)
}

/// Writes an 8-bit, non-interlaced PNG.
pub fn save_image(img: &ImageBuffer, path: impl AsRef<Path>) -> Result<()> {
    let out = BufWriter::new(File::create(path.as_ref())?);
    let encoder = PngEncoder::new_with_quality(out, CompressionType::Default, FilterType::Adaptive);
    let color = match img.channels {
        Channels::Gray => image::ExtendedColorType::L8,
        Channels::Rgb => image::ExtendedColorType::Rgb8,
    };
    encoder
        .write_image(&img.samples, img.width, img.height, color)
        .map_err(|e| match e {
            image::ImageError::IoError(io) => Error::Io(io),
            other => Error::Io(std::io::Error::other(other.to_string())),
        })
}
