//! MSB-first bit strings and fixed-width key packing.

use crate::error::{Result, StegoError};
use crate::matcher::{GridDims, KeyTable};

/// A sequence of bits packed most-significant-bit first into bytes.
/// Bits past `len` in the last byte are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    /// All bits of `bytes`.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Self {
            bytes: bytes.to_vec(),
            len: bytes.len() * 8,
        }
    }

    /// The first `len` bits of `bytes`. Fails if `bytes` is not exactly
    /// `ceil(len / 8)` long or the trailing padding is not zero.
    pub fn from_padded_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() != len.div_ceil(8) {
            return Err(StegoError::BitLength {
                expected: len,
                actual: bytes.len() * 8,
            });
        }
        let spare = bytes.len() * 8 - len;
        if spare > 0 && bytes[bytes.len() - 1] & ((1u8 << spare) - 1) != 0 {
            return Err(StegoError::NonZeroPadding);
        }
        Ok(Self {
            bytes: bytes.to_vec(),
            len,
        })
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut out = Self::new();
        for b in bits {
            out.push(b);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: u32) {
        for shift in (0..width).rev() {
            self.push((value >> shift) & 1 == 1);
        }
    }

    pub fn extend(&mut self, other: &BitString) {
        for b in other.iter() {
            self.push(b);
        }
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.bytes[i / 8] & (0x80 >> (i % 8)) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Reads `width` bits starting at `pos` as an unsigned integer.
    pub fn read_bits(&self, pos: usize, width: u32) -> u64 {
        (0..width as usize).fold(0u64, |acc, k| (acc << 1) | self.get(pos + k) as u64)
    }

    /// Packed bytes, zero-padded to a whole byte.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

/// Bits per key entry: `ceil(log2(n_c))`, zero when there is a single block.
pub fn address_width(n_c: usize) -> u32 {
    if n_c <= 1 {
        0
    } else {
        usize::BITS - (n_c - 1).leading_zeros()
    }
}

pub fn serialize_key(key: &KeyTable) -> BitString {
    let width = address_width(key.n_c());
    let mut bits = BitString::with_capacity(key.n_s() * width as usize);
    for &e in key.entries() {
        bits.push_bits(e as u64, width);
    }
    bits
}

pub fn deserialize_key(bits: &BitString, n_s: usize, cover_grid: GridDims) -> Result<KeyTable> {
    let width = address_width(cover_grid.count());
    let expected = n_s * width as usize;
    if bits.len() != expected {
        return Err(StegoError::BitLength {
            expected,
            actual: bits.len(),
        });
    }
    let entries = (0..n_s)
        .map(|i| bits.read_bits(i * width as usize, width) as usize)
        .collect();
    KeyTable::new(entries, cover_grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(address_width(1), 0);
        assert_eq!(address_width(2), 1);
        assert_eq!(address_width(3), 2);
        assert_eq!(address_width(4096), 12);
        assert_eq!(address_width(4097), 13);
        assert_eq!(address_width(144), 8);
    }

    #[test]
    fn twelve_bit_packing() {
        let key = KeyTable::new(vec![0, 1, 4095], GridDims::new(64, 64)).unwrap();
        let bits = serialize_key(&key);
        assert_eq!(bits.len(), 36);
        // 0000_0000 0000|0000 0000_0001| 1111_1111 1111|0000
        assert_eq!(bits.as_bytes(), &[0x00, 0x00, 0x01, 0xFF, 0xF0]);

        let parsed = BitString::from_padded_bytes(&[0x00, 0x00, 0x01, 0xFF, 0xF0], 36).unwrap();
        assert_eq!(
            deserialize_key(&parsed, 3, GridDims::new(64, 64)).unwrap(),
            key
        );
    }

    #[test]
    fn one_bit_packing() {
        let key = KeyTable::new(vec![1, 0, 1], GridDims::new(1, 2)).unwrap();
        let bits = serialize_key(&key);
        assert_eq!(bits.iter().collect::<Vec<_>>(), vec![true, false, true]);
        let back = BitString::from_bools([true, false, true]);
        assert_eq!(deserialize_key(&back, 3, GridDims::new(1, 2)).unwrap(), key);
    }

    #[test]
    fn wrong_bit_count() {
        let bits = BitString::from_bools([true, false]);
        assert!(matches!(
            deserialize_key(&bits, 3, GridDims::new(1, 2)),
            Err(StegoError::BitLength {
                expected: 3,
                actual: 2
            })
        ));
    }

    #[test]
    fn decoded_entry_out_of_range() {
        // n_c = 3 needs 2 bits; 0b11 = 3 is not a valid address
        let bits = BitString::from_bools([true, true]);
        assert!(matches!(
            deserialize_key(&bits, 1, GridDims::new(1, 3)),
            Err(StegoError::AddressOutOfRange { entry: 3, .. })
        ));
    }

    #[test]
    fn padding_must_be_zero() {
        assert!(BitString::from_padded_bytes(&[0b1010_0000], 3).is_ok());
        assert!(matches!(
            BitString::from_padded_bytes(&[0b1010_0001], 3),
            Err(StegoError::NonZeroPadding)
        ));
        assert!(BitString::from_padded_bytes(&[0, 0], 3).is_err());
    }
}
