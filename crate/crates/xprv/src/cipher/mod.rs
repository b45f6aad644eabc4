//! The EXPer stream cipher, its XOR and AES-128-CTR baselines, and key
//! derivation.
//!
//! EXPer encrypts a byte in five stages: XOR with round key 1, rotate right
//! by `v_i`, XOR with round key 2, rotate right by `v_j`, XOR with round
//! key 3. With the default offsets (2, 6) the two rotations compose to a
//! full byte rotation, so the whole pipeline collapses to a single XOR with
//! a precomputable effective key.
//!
//! # Security Warning
//!
//! EXPer's keystream repeats with a 16-byte period and the XOR baseline is
//! a repeating-key XOR. Neither provides cryptographic confidentiality;
//! they exist to scramble selected syntax elements and to measure cost.

mod aes;
mod keystream;

pub use aes::{aes128_encrypt_block, Aes128};
pub use keystream::{Keystream, KeystreamCursor};

use crate::error::{Error, Result};

/// Length in bytes of each round key.
pub const KEY_LEN: usize = 16;

/// Which stream cipher masks the selected syntax elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CipherId {
    None,
    Exper,
    Xor,
    Aes128Ctr,
}

impl CipherId {
    pub fn to_byte(self) -> u8 {
        match self {
            CipherId::None => 0,
            CipherId::Exper => 1,
            CipherId::Xor => 2,
            CipherId::Aes128Ctr => 3,
        }
    }

    pub fn from_byte(b: u8) -> Result<Self> {
        match b {
            0 => Ok(CipherId::None),
            1 => Ok(CipherId::Exper),
            2 => Ok(CipherId::Xor),
            3 => Ok(CipherId::Aes128Ctr),
            _ => Err(Error::Format(format!("unknown cipher id {b}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CipherId::None => "none",
            CipherId::Exper => "exper",
            CipherId::Xor => "xor",
            CipherId::Aes128Ctr => "aes",
        }
    }
}

/// The two rotation amounts of the permutation stages, each within a byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationOffsets {
    v_i: u8,
    v_j: u8,
}

impl RotationOffsets {
    /// Offsets must lie in 1..=8: the rotation shuffles bits within a byte.
    pub fn new(v_i: u8, v_j: u8) -> Result<Self> {
        if !(1..=8).contains(&v_i) || !(1..=8).contains(&v_j) {
            return Err(Error::Config(format!(
                "rotation offsets must be in 1..=8, got ({v_i}, {v_j})"
            )));
        }
        Ok(Self { v_i, v_j })
    }

    pub fn v_i(self) -> u8 {
        self.v_i
    }

    pub fn v_j(self) -> u8 {
        self.v_j
    }
}

impl Default for RotationOffsets {
    fn default() -> Self {
        Self { v_i: 2, v_j: 6 }
    }
}

/// Cyclic rotate-right of a byte. `n` must be in 0..=8; 0 and 8 are the
/// identity.
pub fn rotr_byte(x: u8, n: u8) -> u8 {
    assert!(n <= 8, "rotation amount {n} out of 0..=8");
    x.rotate_right(u32::from(n))
}

/// Cyclic rotate-left of a byte, the inverse of [`rotr_byte`].
pub fn rotl_byte(x: u8, n: u8) -> u8 {
    assert!(n <= 8, "rotation amount {n} out of 0..=8");
    x.rotate_left(u32::from(n))
}

/// The five EXPer stages applied to one plaintext byte.
pub fn exper_encrypt_byte(p: u8, k1: u8, k2: u8, k3: u8, offsets: RotationOffsets) -> u8 {
    let s = rotr_byte(p ^ k1, offsets.v_i);
    let s = rotr_byte(s ^ k2, offsets.v_j);
    s ^ k3
}

/// Inverse stages in reverse order: XOR k3, rotate left `v_j`, XOR k2,
/// rotate left `v_i`, XOR k1.
pub fn exper_decrypt_byte(c: u8, k1: u8, k2: u8, k3: u8, offsets: RotationOffsets) -> u8 {
    let s = rotl_byte(c ^ k3, offsets.v_j);
    let s = rotl_byte(s ^ k2, offsets.v_i);
    s ^ k1
}

/// Collapses the stage chain over a key triple into the single XOR mask
/// equivalent to it when `v_i + v_j` is a multiple of 8.
pub fn effective_key_byte(k1: u8, k2: u8, k3: u8, offsets: RotationOffsets) -> u8 {
    rotr_byte(rotr_byte(k1, offsets.v_i) ^ k2, offsets.v_j) ^ k3
}

/// Repeating-key XOR baseline; self-inverse.
pub fn xor_encrypt_byte(p: u8, key_byte: u8) -> u8 {
    p ^ key_byte
}

/// SplitMix64 with the published constants. Used as the pseudo-random
/// function behind round-key derivation and the synthetic noise generator,
/// chosen for cross-platform bit-exact output.
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

/// The three 128-bit round keys plus the effective keystream pattern they
/// collapse to under the default offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundKeySet {
    pub r_key1: [u8; KEY_LEN],
    pub r_key2: [u8; KEY_LEN],
    pub r_key3: [u8; KEY_LEN],
    /// Position-wise effective key under the default offsets (2, 6).
    pub eff_key: [u8; KEY_LEN],
}

impl RoundKeySet {
    /// Derives the three round keys from a 64-bit seed: 48 bytes of
    /// SplitMix64 output, each 64-bit word emitted as 8 little-endian bytes.
    pub fn derive(seed: u64) -> Self {
        let mut prf = SplitMix64::new(seed);
        let mut bytes = [0u8; 3 * KEY_LEN];
        for chunk in bytes.chunks_exact_mut(8) {
            chunk.copy_from_slice(&prf.next_u64().to_le_bytes());
        }
        let mut r_key1 = [0u8; KEY_LEN];
        let mut r_key2 = [0u8; KEY_LEN];
        let mut r_key3 = [0u8; KEY_LEN];
        r_key1.copy_from_slice(&bytes[0..16]);
        r_key2.copy_from_slice(&bytes[16..32]);
        r_key3.copy_from_slice(&bytes[32..48]);
        Self::from_keys(r_key1, r_key2, r_key3)
    }

    pub fn from_keys(r_key1: [u8; KEY_LEN], r_key2: [u8; KEY_LEN], r_key3: [u8; KEY_LEN]) -> Self {
        let mut set = Self {
            r_key1,
            r_key2,
            r_key3,
            eff_key: [0u8; KEY_LEN],
        };
        set.eff_key = set.effective_key(RotationOffsets::default());
        set
    }

    /// Position-wise effective key for arbitrary offsets.
    pub fn effective_key(&self, offsets: RotationOffsets) -> [u8; KEY_LEN] {
        let mut eff = [0u8; KEY_LEN];
        for i in 0..KEY_LEN {
            eff[i] = effective_key_byte(self.r_key1[i], self.r_key2[i], self.r_key3[i], offsets);
        }
        eff
    }
}

/// Everything a keystream needs: the round keys and the rotation offsets in
/// force. Offsets travel out of band (they are not stored in the container).
#[derive(Debug, Clone)]
pub struct KeyMaterial {
    pub keys: RoundKeySet,
    pub offsets: RotationOffsets,
}

impl KeyMaterial {
    pub fn from_seed(seed: u64, offsets: RotationOffsets) -> Self {
        Self {
            keys: RoundKeySet::derive(seed),
            offsets,
        }
    }
}

/// Parses a 32-hex-character string into one round key.
pub fn parse_hex_key(s: &str) -> Result<[u8; KEY_LEN]> {
    let s = s.trim();
    if s.len() != 2 * KEY_LEN {
        return Err(Error::Config(format!(
            "key must be 32 hex characters, got {}",
            s.len()
        )));
    }
    let mut key = [0u8; KEY_LEN];
    for (i, byte) in key.iter_mut().enumerate() {
        *byte = u8::from_str_radix(&s[2 * i..2 * i + 2], 16)
            .map_err(|_| Error::Config(format!("invalid hex key {s:?}")))?;
    }
    Ok(key)
}
