//! MSB-first bit writer/reader the token stream is built on.
//!
//! Bits are packed most-significant-bit first within each byte; the final
//! partial byte is zero-padded and the true bit length travels out of band.

use crate::error::{Error, Result};

/// Accumulates an MSB-first bitstream into a growable byte buffer.
#[derive(Debug, Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    acc: u32,
    acc_bits: u32,
    bit_len: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the `width` low-order bits of `value`, most significant first.
    ///
    /// `width` must be in 1..=64 and `value` must fit in `width` bits.
    pub fn append_bits(&mut self, value: u64, width: u32) -> Result<()> {
        if width == 0 || width > 64 {
            return Err(Error::InvalidBitWidth { width });
        }
        if width < 64 && (value >> width) != 0 {
            return Err(Error::ValueTooWide { value, width });
        }
        if width > 32 {
            self.push_raw((value >> 32) as u32, width - 32);
            self.push_raw(value as u32, 32);
        } else {
            self.push_raw(value as u32, width);
        }
        self.bit_len += u64::from(width);
        Ok(())
    }

    // width is 1..=32 and the value already fits; the accumulator holds
    // at most 7 carry bits, so acc_bits + width <= 39 fits in u64.
    fn push_raw(&mut self, value: u32, width: u32) {
        let acc = (u64::from(self.acc) << width) | u64::from(value);
        let mut n = self.acc_bits + width;
        while n >= 8 {
            self.bytes.push((acc >> (n - 8)) as u8);
            n -= 8;
        }
        self.acc = (acc & ((1u64 << n) - 1)) as u32;
        self.acc_bits = n;
    }

    /// Total bits appended so far.
    pub fn bit_len(&self) -> u64 {
        self.bit_len
    }

    /// Zero-pads the final partial byte and returns `(bytes, bit_len)`.
    pub fn finish(mut self) -> (Vec<u8>, u64) {
        if self.acc_bits > 0 {
            self.bytes.push((self.acc << (8 - self.acc_bits)) as u8);
        }
        (self.bytes, self.bit_len)
    }
}

/// Reads an MSB-first bitstream bounded by an explicit bit length.
#[derive(Debug)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    cursor: u64,
    limit: u64,
}

impl<'a> BitReader<'a> {
    /// `limit` is the number of valid bits; padding beyond it is never read.
    pub fn new(bytes: &'a [u8], limit: u64) -> Self {
        assert!(
            limit <= bytes.len() as u64 * 8,
            "bit limit exceeds buffer capacity"
        );
        Self {
            bytes,
            cursor: 0,
            limit,
        }
    }

    /// Reads the next `width` bits, most significant first.
    pub fn read_bits(&mut self, width: u32) -> Result<u64> {
        if width == 0 || width > 64 {
            return Err(Error::InvalidBitWidth { width });
        }
        if self.cursor + u64::from(width) > self.limit {
            return Err(Error::BitstreamOverrun {
                requested: width,
                remaining: self.limit - self.cursor,
            });
        }
        let mut out = 0u64;
        let mut remaining = width;
        while remaining > 0 {
            let byte = self.bytes[(self.cursor / 8) as usize];
            let avail = 8 - (self.cursor % 8) as u32;
            let take = avail.min(remaining);
            let piece = (byte >> (avail - take)) & (((1u16 << take) - 1) as u8);
            out = (out << take) | u64::from(piece);
            self.cursor += u64::from(take);
            remaining -= take;
        }
        Ok(out)
    }

    /// Bit offset of the next read.
    pub fn position(&self) -> u64 {
        self.cursor
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.cursor
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits_of(bytes: &[u8], bit_len: u64) -> Vec<bool> {
        (0..bit_len)
            .map(|i| bytes[(i / 8) as usize] >> (7 - i % 8) & 1 == 1)
            .collect()
    }

    #[test]
    fn append_packs_msb_first() {
        let mut w = BitWriter::new();
        w.append_bits(0b101, 3).unwrap();
        assert_eq!(w.bit_len(), 3);
        let (bytes, len) = w.finish();
        assert_eq!(bytes, vec![0b1010_0000]);
        assert_eq!(len, 3);
    }

    #[test]
    fn append_single_zero_bit() {
        let mut w = BitWriter::new();
        w.append_bits(0, 1).unwrap();
        let (bytes, len) = w.finish();
        assert_eq!(bytes, vec![0x00]);
        assert_eq!(len, 1);
    }

    #[test]
    fn mixed_widths_pack_and_pad() {
        // 1 | 00 | 11 -> 10011 padded to 0b10011000
        let mut w = BitWriter::new();
        w.append_bits(0b1, 1).unwrap();
        w.append_bits(0b00, 2).unwrap();
        w.append_bits(0b11, 2).unwrap();
        assert_eq!(w.bit_len(), 5);
        let (bytes, len) = w.finish();
        assert_eq!(bytes, vec![0b1001_1000]);
        assert_eq!(len, 5);
    }

    #[test]
    fn width_and_value_contracts() {
        let mut w = BitWriter::new();
        assert_eq!(
            w.append_bits(0, 0),
            Err(Error::InvalidBitWidth { width: 0 })
        );
        assert_eq!(
            w.append_bits(0, 65),
            Err(Error::InvalidBitWidth { width: 65 })
        );
        assert_eq!(
            w.append_bits(4, 2),
            Err(Error::ValueTooWide { value: 4, width: 2 })
        );
        // Full-width values are always representable.
        w.append_bits(u64::MAX, 64).unwrap();
        assert_eq!(w.bit_len(), 64);
    }

    #[test]
    fn read_inverts_append() {
        let mut w = BitWriter::new();
        w.append_bits(0b101, 3).unwrap();
        let (bytes, len) = w.finish();
        let mut r = BitReader::new(&bytes, len);
        assert_eq!(r.read_bits(3).unwrap(), 0b101);
        assert_eq!(r.position(), 3);
    }

    #[test]
    fn read_never_consumes_padding() {
        let bytes = vec![0xFF];
        let mut r = BitReader::new(&bytes, 3);
        r.read_bits(3).unwrap();
        assert_eq!(
            r.read_bits(1),
            Err(Error::BitstreamOverrun {
                requested: 1,
                remaining: 0
            })
        );
    }

    #[test]
    fn finish_byte_count_is_ceil_of_bit_len() {
        for total_bits in [0u64, 1, 7, 8, 9, 15, 16, 17, 63, 64, 65] {
            let mut w = BitWriter::new();
            for _ in 0..total_bits {
                w.append_bits(1, 1).unwrap();
            }
            let (bytes, len) = w.finish();
            assert_eq!(len, total_bits);
            assert_eq!(bytes.len() as u64, total_bits.div_ceil(8));
        }
    }

    fn field_sequence() -> impl Strategy<Value = Vec<(u64, u32)>> {
        prop::collection::vec(
            (1u32..=64).prop_flat_map(|width| {
                let max = if width == 64 {
                    u64::MAX
                } else {
                    (1u64 << width) - 1
                };
                (0..=max).prop_map(move |value| (value, width))
            }),
            0..64,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn round_trip_reproduces_every_field(fields in field_sequence()) {
            let mut w = BitWriter::new();
            for &(value, width) in &fields {
                w.append_bits(value, width).unwrap();
            }
            let (bytes, len) = w.finish();
            prop_assert_eq!(bytes.len() as u64, len.div_ceil(8));

            let mut r = BitReader::new(&bytes, len);
            for &(value, width) in &fields {
                prop_assert_eq!(r.read_bits(width).unwrap(), value);
            }
            prop_assert_eq!(r.remaining(), 0);
        }

        #[test]
        fn concatenation_matches_separate_writes(
            a in field_sequence(),
            b in field_sequence(),
        ) {
            let mut joint = BitWriter::new();
            for &(value, width) in a.iter().chain(&b) {
                joint.append_bits(value, width).unwrap();
            }
            let (joint_bytes, joint_len) = joint.finish();

            let mut first = BitWriter::new();
            for &(value, width) in &a {
                first.append_bits(value, width).unwrap();
            }
            let mut second = BitWriter::new();
            for &(value, width) in &b {
                second.append_bits(value, width).unwrap();
            }
            let (first_bytes, first_len) = first.finish();
            let (second_bytes, second_len) = second.finish();

            let mut concat = bits_of(&first_bytes, first_len);
            concat.extend(bits_of(&second_bytes, second_len));
            prop_assert_eq!(joint_len, first_len + second_len);
            prop_assert_eq!(bits_of(&joint_bytes, joint_len), concat);
        }
    }
}
