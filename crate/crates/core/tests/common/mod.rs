//! Straight-line reference implementation of the whole embed path.
//! Mirrors tests/oracle/oracle.py and shares no code with the library.
#![allow(dead_code)]

pub fn splitmix64(seed: u64, count: usize) -> Vec<u64> {
    let mut state = seed;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        out.push(z ^ (z >> 31));
    }
    out
}

/// Dense partial Fisher-Yates.
pub fn slots(seed: u64, total: usize, count: usize) -> Vec<usize> {
    let draws = splitmix64(seed, count);
    let mut arr: Vec<usize> = (0..total).collect();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let j = i + (draws[i] % (total - i) as u64) as usize;
        arr.swap(i, j);
        out.push(arr[i]);
    }
    out
}

pub fn keystream_bits(x0: f64, n: usize) -> Vec<u8> {
    let mut x = x0;
    for _ in 0..1000 {
        x = 3.9996 * x * (1.0 - x);
    }
    let mut bits = Vec::with_capacity(n);
    for _ in 0..n {
        x = 3.9996 * x * (1.0 - x);
        bits.push(if x >= 0.5 { 1 } else { 0 });
    }
    bits
}

pub fn to_bits(data: &[u8]) -> Vec<u8> {
    let mut bits = Vec::new();
    for &b in data {
        for i in 0..8 {
            bits.push((b >> (7 - i)) & 1);
        }
    }
    bits
}

pub fn to_bytes(bits: &[u8]) -> Vec<u8> {
    let mut out = Vec::new();
    for chunk in bits.chunks(8) {
        let mut v = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            v |= b << (7 - i);
        }
        out.push(v);
    }
    out
}

pub fn encrypt(data: &[u8], x0: f64) -> Vec<u8> {
    let ks = keystream_bits(x0, 8 * data.len());
    let bits: Vec<u8> = to_bits(data).iter().zip(&ks).map(|(a, b)| a ^ b).collect();
    to_bytes(&bits)
}

/// Returns the stego samples and the scheduled slots.
pub fn embed(cover: &[u8], cipher: &[u8], seed: u64, k: usize) -> (Vec<u8>, Vec<usize>) {
    let mut frame = to_bits(&(cipher.len() as u32).to_be_bytes());
    frame.extend(to_bits(cipher));
    let n = frame.len().div_ceil(k);
    frame.resize(n * k, 0);
    let schedule = slots(seed, cover.len(), n);
    let mut out = cover.to_vec();
    for (i, &s) in schedule.iter().enumerate() {
        let mut v = 0u8;
        for &b in &frame[i * k..(i + 1) * k] {
            v = (v << 1) | b;
        }
        let mask = ((1u16 << k) - 1) as u8;
        out[s] = (out[s] & !mask) | v;
    }
    (out, schedule)
}
