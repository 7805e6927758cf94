//! Chaotic stream cipher plus keyed k-LSB image steganography.
//!
//! A message is first encrypted by XOR with a logistic-map keystream
//! (crypto-key), then hidden in the k low bits of byte slots chosen by a
//! SplitMix64-driven shuffle (stego-key). The receiver needs both keys and
//! the agreed k, but not the cover image.
//!
//! ```
//! use cryptsteg::{Channels, CryptoKey, ImageBuffer, StegoKey, StegoParams};
//!
//! let cover = ImageBuffer::new(16, 16, Channels::Rgb, vec![128; 16 * 16 * 3]).unwrap();
//! let ck: CryptoKey = "0.731".parse().unwrap();
//! let sk: StegoKey = "5eed".parse().unwrap();
//! let params = StegoParams::new(2).unwrap();
//!
//! let stego = cryptsteg::hide(&cover, b"hello", &ck, &sk, params).unwrap();
//! assert_eq!(cryptsteg::reveal(&stego, &ck, &sk, params).unwrap(), b"hello");
//! ```

pub mod bits;
pub mod chaos;
pub mod cipher;
mod error;
pub mod image_io;
pub mod lsb;
pub mod metrics;
pub mod scheduler;

pub use bits::BitSequence;
pub use chaos::{keystream, CryptoKey, LogisticState};
pub use cipher::{decrypt, encrypt};
pub use error::{Error, Result};
pub use image_io::{load_image, save_image, Channels, ImageBuffer};
pub use lsb::{capacity, embed, extract, StegoParams};
pub use metrics::{distortion, DistortionReport, RandomnessReport};
pub use scheduler::{slot_sequence, StegoKey};

/// Encrypts `message` and embeds the ciphertext into `cover`.
pub fn hide(
    cover: &ImageBuffer,
    message: &[u8],
    crypto_key: &CryptoKey,
    stego_key: &StegoKey,
    params: StegoParams,
) -> Result<ImageBuffer> {
    let ciphertext = encrypt(message, crypto_key)?;
    embed(cover, &ciphertext, stego_key, params)
}

/// Extracts the ciphertext from `stego` and decrypts it.
pub fn reveal(
    stego: &ImageBuffer,
    crypto_key: &CryptoKey,
    stego_key: &StegoKey,
    params: StegoParams,
) -> Result<Vec<u8>> {
    let ciphertext = extract(stego, stego_key, params)?;
    decrypt(&ciphertext, crypto_key)
}
