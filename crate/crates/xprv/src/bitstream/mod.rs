//! Bit-exact serialization: MSB-first bit writer/reader, exp-Golomb codes,
//! and the container format.
//!
//! The unsigned exp-Golomb code for `v` is bit-length(v+1)-1 zeros followed
//! by the binary of v+1; signed values map through (v <= 0 ? -2v : 2v - 1).

mod container;

pub use container::{
    parse_elements, parse_header, serialize_elements, ContainerHeader, EncodedStream, HEADER_LEN,
    MAGIC, VERSION,
};

use crate::error::{Error, Result};

/// Append-only bit buffer, MSB-first within each byte; the final byte is
/// zero-padded.
#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    buf: Vec<u8>,
    bits: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn write_bit(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        if self.bits % 8 == 0 {
            self.buf.push(0);
        }
        if bit != 0 {
            let last = self.buf.len() - 1;
            self.buf[last] |= 1 << (7 - (self.bits % 8));
        }
        self.bits += 1;
    }

    /// Fixed-width field, MSB-first. `n` must be <= 32 and `value` must fit.
    pub fn write_bits(&mut self, value: u32, n: u32) {
        assert!(n <= 32, "field width {n} out of 0..=32");
        assert!(
            n == 32 || value < (1u32 << n),
            "value {value} does not fit {n} bits"
        );
        for i in (0..n).rev() {
            self.write_bit(((value >> i) & 1) as u8);
        }
    }

    pub fn write_ue(&mut self, v: u32) {
        let x = v as u64 + 1;
        let len = 64 - x.leading_zeros();
        for _ in 0..len - 1 {
            self.write_bit(0);
        }
        for i in (0..len).rev() {
            self.write_bit(((x >> i) & 1) as u8);
        }
    }

    pub fn write_se(&mut self, v: i32) {
        let mapped = if v <= 0 { (-2 * v as i64) as u32 } else { (2 * v as i64 - 1) as u32 };
        self.write_ue(mapped);
    }

    pub fn bit_len(&self) -> usize {
        self.bits
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }
}

/// Bit-level reader over a byte slice, MSB-first.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    pub fn read_bit(&mut self) -> Result<u8> {
        let byte = self.pos / 8;
        if byte >= self.data.len() {
            return Err(Error::Decode("truncated bitstream".into()));
        }
        let bit = (self.data[byte] >> (7 - (self.pos % 8))) & 1;
        self.pos += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, n: u32) -> Result<u32> {
        assert!(n <= 32, "field width {n} out of 0..=32");
        let mut v: u32 = 0;
        for _ in 0..n {
            v = (v << 1) | u32::from(self.read_bit()?);
        }
        Ok(v)
    }

    pub fn read_ue(&mut self) -> Result<u32> {
        let mut zeros = 0u32;
        while self.read_bit()? == 0 {
            zeros += 1;
            if zeros > 32 {
                return Err(Error::Decode("malformed exp-Golomb prefix".into()));
            }
        }
        let rest = u64::from(self.read_bits(zeros)?);
        let x = (1u64 << zeros) | rest;
        let v = x - 1;
        u32::try_from(v).map_err(|_| Error::Decode("exp-Golomb value overflow".into()))
    }

    pub fn read_se(&mut self) -> Result<i32> {
        let ue = self.read_ue()? as i64;
        let v = if ue % 2 == 0 { -(ue / 2) } else { (ue + 1) / 2 };
        i32::try_from(v).map_err(|_| Error::Decode("signed exp-Golomb overflow".into()))
    }

    /// Bits consumed so far.
    pub fn position(&self) -> usize {
        self.pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bit_string(w: &BitWriter) -> String {
        let bytes = w.clone().into_bytes();
        (0..w.bit_len())
            .map(|i| {
                if bytes[i / 8] >> (7 - i % 8) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    #[test]
    fn ue_definitional_vectors() {
        for (v, expect) in [(0u32, "1"), (1, "010"), (2, "011"), (3, "00100"), (7, "0001000")] {
            let mut w = BitWriter::new();
            w.write_ue(v);
            assert_eq!(bit_string(&w), expect, "ue({v})");
        }
    }

    #[test]
    fn se_definitional_vectors() {
        // 0 -> ue(0), 1 -> ue(1), -1 -> ue(2).
        for (v, expect) in [(0i32, "1"), (1, "010"), (-1, "011"), (2, "00100"), (-2, "00101")] {
            let mut w = BitWriter::new();
            w.write_se(v);
            assert_eq!(bit_string(&w), expect, "se({v})");
        }
    }

    #[test]
    fn ue_round_trip_exhaustive() {
        let mut w = BitWriter::new();
        for v in 0..=10_000u32 {
            w.write_ue(v);
        }
        let bytes = w.into_bytes();
        let mut r = BitReader::new(&bytes);
        for v in 0..=10_000u32 {
            assert_eq!(r.read_ue().unwrap(), v);
        }
    }

    #[test]
    fn se_round_trip_range() {
        let mut w = BitWriter::new();
        for v in -500..=500i32 {
            w.write_se(v);
        }
        let bytes = w.into_bytes();
        let mut r = BitReader::new(&bytes);
        for v in -500..=500i32 {
            assert_eq!(r.read_se().unwrap(), v);
        }
    }

    #[test]
    fn fixed_width_fields() {
        let mut w = BitWriter::new();
        w.write_bits(0b101, 3);
        w.write_bits(0, 6);
        assert_eq!(bit_string(&w), "101000000");
        let bytes = w.into_bytes();
        let mut r = BitReader::new(&bytes);
        assert_eq!(r.read_bits(3).unwrap(), 0b101);
        assert_eq!(r.read_bits(6).unwrap(), 0);
    }

    #[test]
    #[should_panic(expected = "does not fit")]
    fn write_bits_rejects_oversized_value() {
        let mut w = BitWriter::new();
        w.write_bits(8, 3);
    }

    #[test]
    fn reader_reports_truncation() {
        let mut r = BitReader::new(&[0x80]);
        for _ in 0..8 {
            r.read_bit().unwrap();
        }
        assert!(matches!(r.read_bit(), Err(Error::Decode(_))));
    }

    #[test]
    fn malformed_ue_prefix_is_rejected() {
        // 40 zero bits: prefix longer than any encodable value.
        let bytes = [0u8; 5];
        let mut r = BitReader::new(&bytes);
        assert!(r.read_ue().is_err());
    }

    proptest! {
        #[test]
        fn random_fixed_width_round_trip(values in proptest::collection::vec((0u32..=u32::MAX, 1u32..=32), 1..200)) {
            let mut w = BitWriter::new();
            let mut expect = Vec::new();
            for (v, n) in values {
                let masked = if n == 32 { v } else { v & ((1u32 << n) - 1) };
                w.write_bits(masked, n);
                expect.push((masked, n));
            }
            let bytes = w.into_bytes();
            let mut r = BitReader::new(&bytes);
            for (v, n) in expect {
                prop_assert_eq!(r.read_bits(n).unwrap(), v);
            }
        }

        #[test]
        fn random_golomb_round_trip(values in proptest::collection::vec(any::<u32>(), 1..200)) {
            let mut w = BitWriter::new();
            for &v in &values {
                // Stay clear of u32::MAX so v+1 fits.
                w.write_ue(v % 1_000_000);
            }
            let bytes = w.into_bytes();
            let mut r = BitReader::new(&bytes);
            for &v in &values {
                prop_assert_eq!(r.read_ue().unwrap(), v % 1_000_000);
            }
        }
    }
}
