//! Logistic-map pseudorandom bit generator.
//!
//! The orbit `x <- LAMBDA * x * (1 - x)` is iterated in IEEE-754 binary64
//! with a fixed evaluation order, so sender and receiver reproduce the same
//! keystream bit for bit. Each orbit value is quantized to one bit by a
//! threshold at 0.5.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitSequence;
use crate::error::{Error, Result};

/// Map parameter. Chosen for the balance of the thresholded orbit.
pub const LAMBDA: f64 = 3.9996;

/// Quantization threshold; values at or above it map to 1.
pub const THRESHOLD: f64 = 0.5;

/// Iterations discarded before the first keystream bit.
pub const BURN_IN: u32 = 1000;

const MAX_KEY_DIGITS: usize = 17;

/// Cipher secret: the initial condition of the logistic map, strictly inside (0,1).
///
/// The text form is `0.` followed by 1 to 17 decimal digits. `Debug` is
/// redacted so the key cannot leak through logging.
///
/// The unstable fixed point `1 - 1/LAMBDA` is accepted: rounding noise
/// pushes the orbit off it within a few dozen iterations.
#[derive(Clone, Copy, PartialEq)]
pub struct CryptoKey {
    x0: f64,
}

impl CryptoKey {
    pub fn new(x0: f64) -> Result<Self> {
        if x0.is_finite() && x0 > 0.0 && x0 < 1.0 {
            Ok(Self { x0 })
        } else {
            Err(Error::InvalidKey(
                "crypto-key must lie strictly inside (0,1)",
            ))
        }
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Canonical text encoding; parses back to an identical key.
    pub fn to_canonical_string(&self) -> String {
        // Shortest round-trip decimal. Never uses exponent notation for f64.
        let s = format!("{}", self.x0);
        debug_assert!(s.starts_with("0."));
        s
    }

    pub fn initial_state(&self) -> LogisticState {
        LogisticState {
            x: self.x0,
            iterations: 0,
        }
    }
}

impl FromStr for CryptoKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("0.")
            .ok_or(Error::InvalidKey("crypto-key must have the form 0.ddd"))?;
        if digits.is_empty() || digits.len() > MAX_KEY_DIGITS {
            return Err(Error::InvalidKey(
                "crypto-key must have between 1 and 17 decimal digits",
            ));
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidKey("crypto-key must have the form 0.ddd"));
        }
        let x0: f64 = s
            .parse()
            .map_err(|_| Error::InvalidKey("crypto-key is not a decimal number"))?;
        Self::new(x0)
    }
}

impl fmt::Debug for CryptoKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CryptoKey(<redacted>)")
    }
}

/// A point on the logistic orbit plus the number of steps taken to reach it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticState {
    x: f64,
    iterations: u64,
}

impl LogisticState {
    pub fn new(x: f64) -> Result<Self> {
        CryptoKey::new(x).map(|k| k.initial_state())
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn lambda(&self) -> f64 {
        LAMBDA
    }

    /// One map step, evaluated as `(LAMBDA * x) * (1 - x)`.
    pub fn iterate(self) -> Result<Self> {
        let one_minus = 1.0 - self.x;
        let next = LAMBDA * self.x * one_minus;
        let iterations = self.iterations + 1;
        if !(next > 0.0 && next < 1.0) {
            return Err(Error::DegenerateOrbit { iterations });
        }
        Ok(Self {
            x: next,
            iterations,
        })
    }

    /// Advances `n >= 1` steps without emitting anything.
    pub fn burn_in(self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "burn-in length must be at least 1".into(),
            ));
        }
        (0..n).try_fold(self, |s, _| s.iterate())
    }
}

pub fn threshold_bit(x: f64) -> bool {
    x >= THRESHOLD
}

/// Keystream bit generator: burn-in, then one thresholded bit per map step.
#[derive(Debug, Clone)]
pub struct KeystreamGenerator {
    state: LogisticState,
}

impl KeystreamGenerator {
    pub fn new(key: &CryptoKey) -> Result<Self> {
        Ok(Self {
            state: key.initial_state().burn_in(BURN_IN)?,
        })
    }

    pub fn next_bit(&mut self) -> Result<bool> {
        self.state = self.state.iterate()?;
        Ok(threshold_bit(self.state.x))
    }

    /// Next 8 bits packed MSB-first.
    pub fn next_byte(&mut self) -> Result<u8> {
        let mut byte = 0u8;
        for _ in 0..8 {
            byte = (byte << 1) | self.next_bit()? as u8;
        }
        Ok(byte)
    }

    pub fn state(&self) -> LogisticState {
        self.state
    }
}

pub fn keystream(key: &CryptoKey, n_bits: usize) -> Result<BitSequence> {
    let mut gen = KeystreamGenerator::new(key)?;
    let mut out = BitSequence::with_capacity(n_bits);
    for _ in 0..n_bits {
        out.push(gen.next_bit()?);
    }
    Ok(out)
}
