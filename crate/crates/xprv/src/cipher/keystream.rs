//! Keystream generation and bit-level consumption.
//!
//! EXPer and the XOR baseline expose a repeating 16-byte pattern (the
//! effective key and the raw key respectively); AES runs in counter mode
//! with a zero nonce and a little-endian 64-bit block counter in bytes
//! 8..16 of the counter block. Bits leave each keystream byte most
//! significant first, matching the bitstream writer.

use std::time::{Duration, Instant};

use super::{Aes128, CipherId, KeyMaterial, KEY_LEN};

#[derive(Debug, Clone)]
enum Material {
    None,
    Repeating([u8; KEY_LEN]),
    Aes {
        cipher: Aes128,
        cached: [u8; 16],
        cached_block: u64,
    },
}

/// Byte-granular keystream source for one cipher.
#[derive(Debug, Clone)]
pub struct Keystream {
    cipher_id: CipherId,
    material: Material,
    pos: u64,
    cipher_time: Duration,
}

impl Keystream {
    pub fn none() -> Self {
        Self {
            cipher_id: CipherId::None,
            material: Material::None,
            pos: 0,
            cipher_time: Duration::ZERO,
        }
    }

    pub fn for_cipher(cipher_id: CipherId, material: &KeyMaterial) -> Self {
        let inner = match cipher_id {
            CipherId::None => Material::None,
            CipherId::Exper => {
                Material::Repeating(material.keys.effective_key(material.offsets))
            }
            CipherId::Xor => Material::Repeating(material.keys.r_key1),
            CipherId::Aes128Ctr => Material::Aes {
                cipher: Aes128::new(&material.keys.r_key1),
                cached: [0u8; 16],
                cached_block: u64::MAX,
            },
        };
        Self {
            cipher_id,
            material: inner,
            pos: 0,
            cipher_time: Duration::ZERO,
        }
    }

    pub fn cipher_id(&self) -> CipherId {
        self.cipher_id
    }

    /// Next byte position to be produced.
    pub fn position(&self) -> u64 {
        self.pos
    }

    /// Accumulated time spent generating keystream material.
    pub fn cipher_time(&self) -> Duration {
        self.cipher_time
    }

    fn byte_at(&mut self, pos: u64) -> u8 {
        match &mut self.material {
            Material::None => 0,
            Material::Repeating(key) => key[(pos % KEY_LEN as u64) as usize],
            Material::Aes {
                cipher,
                cached,
                cached_block,
            } => {
                let block = pos / 16;
                if *cached_block != block {
                    let start = Instant::now();
                    let mut counter = [0u8; 16];
                    counter[8..16].copy_from_slice(&block.to_le_bytes());
                    *cached = cipher.encrypt_block(&counter);
                    *cached_block = block;
                    self.cipher_time += start.elapsed();
                }
                cached[(pos % 16) as usize]
            }
        }
    }

    pub fn next_byte(&mut self) -> u8 {
        let b = self.byte_at(self.pos);
        self.pos += 1;
        b
    }

    /// Bulk generation from the current position, for throughput
    /// measurement. One timer pair covers the whole call.
    pub fn fill(&mut self, out: &mut [u8]) {
        let start = Instant::now();
        match &mut self.material {
            Material::None => {
                out.fill(0);
                self.pos += out.len() as u64;
            }
            Material::Repeating(key) => {
                for b in out.iter_mut() {
                    *b = key[(self.pos % KEY_LEN as u64) as usize];
                    self.pos += 1;
                }
            }
            Material::Aes {
                cipher,
                cached,
                cached_block,
            } => {
                for b in out.iter_mut() {
                    let block = self.pos / 16;
                    if *cached_block != block {
                        let mut counter = [0u8; 16];
                        counter[8..16].copy_from_slice(&block.to_le_bytes());
                        *cached = cipher.encrypt_block(&counter);
                        *cached_block = block;
                    }
                    *b = cached[(self.pos % 16) as usize];
                    self.pos += 1;
                }
            }
        }
        self.cipher_time += start.elapsed();
    }
}

/// Strictly ordered bit consumption over a [`Keystream`]. Single-owner:
/// one stream, one cursor.
#[derive(Debug, Clone)]
pub struct KeystreamCursor {
    ks: Keystream,
    current: u8,
    bit: u8,
    consumed_bits: u64,
}

impl KeystreamCursor {
    pub fn new(ks: Keystream) -> Self {
        Self {
            ks,
            current: 0,
            bit: 8,
            consumed_bits: 0,
        }
    }

    /// Next keystream bit, most significant bit of each byte first.
    pub fn next_bit(&mut self) -> u8 {
        if self.bit == 8 {
            self.current = self.ks.next_byte();
            self.bit = 0;
        }
        let b = (self.current >> (7 - self.bit)) & 1;
        self.bit += 1;
        self.consumed_bits += 1;
        b
    }

    /// Next `n` bits (n <= 8) packed MSB-first into the low bits.
    pub fn next_bits(&mut self, n: u8) -> u8 {
        assert!(n <= 8, "bit group size {n} out of 0..=8");
        let mut v = 0u8;
        for _ in 0..n {
            v = (v << 1) | self.next_bit();
        }
        v
    }

    pub fn consumed_bits(&self) -> u64 {
        self.consumed_bits
    }

    pub fn cipher_time(&self) -> Duration {
        self.ks.cipher_time()
    }

    pub fn cipher_id(&self) -> CipherId {
        self.ks.cipher_id()
    }
}
