//! Binary-additive stream cipher over the logistic keystream.
//!
//! `ciphertext = plaintext XOR keystream`, bits taken MSB-first per byte.
//! Encryption and decryption are the same operation. There is no
//! authentication: a wrong key yields garbage of the right length.

use crate::bits::BitSequence;
use crate::chaos::{CryptoKey, KeystreamGenerator};
use crate::error::{Error, Result};

pub fn xor_transform(data: &BitSequence, keystream: &BitSequence) -> Result<BitSequence> {
    if data.len() != keystream.len() {
        return Err(Error::LengthMismatch {
            left: data.len(),
            right: keystream.len(),
        });
    }
    Ok(data
        .iter()
        .zip(keystream.iter())
        .map(|(d, k)| d ^ k)
        .collect())
}

/// Encrypts `plaintext` with a fresh keystream for `key`.
///
/// Every message starts at the first post-burn-in keystream bit, so two
/// messages under the same key share a keystream.
pub fn encrypt(plaintext: &[u8], key: &CryptoKey) -> Result<Vec<u8>> {
    let mut gen = KeystreamGenerator::new(key)?;
    plaintext
        .iter()
        .map(|&b| gen.next_byte().map(|k| b ^ k))
        .collect()
}

pub fn decrypt(ciphertext: &[u8], key: &CryptoKey) -> Result<Vec<u8>> {
    encrypt(ciphertext, key)
}
