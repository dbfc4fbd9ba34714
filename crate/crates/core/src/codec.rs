//! Key payload: XOR cipher, byte-pair run-length coding and framing.
//!
//! Wire layout of a [`Payload`] (8-byte header, then body):
//!
//! ```text
//! offset 0  'S' 'W'               magic
//! offset 2  0x01                  version
//! offset 3  flags                 bit 0: body is run-length coded
//! offset 4  body_bit_length       u32 big-endian
//! offset 8  body                  ceil(body_bit_length / 8) bytes
//! ```
//!
//! Encoding order is serialize, pad, XOR, run-length code, frame.

use crate::bits::{address_width, deserialize_key, serialize_key, BitString};
use crate::error::{Result, StegoError};
use crate::matcher::{GridDims, KeyTable};

pub const MAGIC: [u8; 2] = *b"SW";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 8;
pub const FLAG_RLE: u8 = 0x01;

/// Non-empty repeating XOR key.
#[derive(Clone, PartialEq, Eq)]
pub struct CipherKey(Vec<u8>);

impl CipherKey {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(StegoError::EmptyCipherKey);
        }
        Ok(Self(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Debug for CipherKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CipherKey({} bytes)", self.0.len())
    }
}

pub fn xor_cipher(data: &[u8], key: &CipherKey) -> Vec<u8> {
    data.iter()
        .zip(key.0.iter().cycle())
        .map(|(d, k)| d ^ k)
        .collect()
}

/// Byte-pair `(count, value)` coding with counts in `1..=255`.
///
/// Returns the input unchanged with `applied = false` whenever coding would
/// not make it shorter.
pub fn rle_encode(data: &[u8]) -> (Vec<u8>, bool) {
    let mut out = Vec::new();
    let mut iter = data.iter().peekable();
    while let Some(&value) = iter.next() {
        let mut count = 1u8;
        while count < u8::MAX && iter.peek() == Some(&&value) {
            iter.next();
            count += 1;
        }
        out.push(count);
        out.push(value);
        if out.len() >= data.len() {
            return (data.to_vec(), false);
        }
    }
    if out.len() >= data.len() {
        (data.to_vec(), false)
    } else {
        (out, true)
    }
}

pub fn rle_decode(data: &[u8], applied: bool) -> Result<Vec<u8>> {
    if !applied {
        return Ok(data.to_vec());
    }
    if !data.len().is_multiple_of(2) {
        return Err(StegoError::MalformedRle("odd length"));
    }
    let mut out = Vec::new();
    for pair in data.chunks_exact(2) {
        let (count, value) = (pair[0], pair[1]);
        if count == 0 {
            return Err(StegoError::MalformedRle("zero run count"));
        }
        out.extend(std::iter::repeat_n(value, count as usize));
    }
    Ok(out)
}

/// Parsed 8-byte payload header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PayloadHeader {
    pub flags: u8,
    pub body_bit_length: u32,
}

impl PayloadHeader {
    pub fn rle_applied(&self) -> bool {
        self.flags & FLAG_RLE != 0
    }

    pub fn body_len(&self) -> usize {
        (self.body_bit_length as usize).div_ceil(8)
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let len = self.body_bit_length.to_be_bytes();
        [
            MAGIC[0], MAGIC[1], VERSION, self.flags, len[0], len[1], len[2], len[3],
        ]
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(StegoError::BadHeader(format!(
                "need {HEADER_LEN} bytes, got {}",
                bytes.len()
            )));
        }
        if bytes[0..2] != MAGIC {
            return Err(StegoError::BadHeader(format!(
                "magic {:02X} {:02X}",
                bytes[0], bytes[1]
            )));
        }
        if bytes[2] != VERSION {
            return Err(StegoError::BadHeader(format!("version {}", bytes[2])));
        }
        if bytes[3] & !FLAG_RLE != 0 {
            return Err(StegoError::BadHeader(format!("flags {:#04x}", bytes[3])));
        }
        Ok(Self {
            flags: bytes[3],
            body_bit_length: u32::from_be_bytes([bytes[4], bytes[5], bytes[6], bytes[7]]),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Payload {
    pub header: PayloadHeader,
    pub body: Vec<u8>,
}

impl Payload {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.body.len());
        out.extend_from_slice(&self.header.to_bytes());
        out.extend_from_slice(&self.body);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let header = PayloadHeader::parse(bytes)?;
        let body = &bytes[HEADER_LEN..];
        if body.len() != header.body_len() {
            return Err(StegoError::BadHeader(format!(
                "body_bit_length {} needs {} bytes, found {}",
                header.body_bit_length,
                header.body_len(),
                body.len()
            )));
        }
        Ok(Self {
            header,
            body: body.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        HEADER_LEN + self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn encode_payload(key: &KeyTable, cipher: &CipherKey) -> Result<Payload> {
    let bits = serialize_key(key);
    let key_bits = bits.len();
    let ciphered = xor_cipher(bits.as_bytes(), cipher);
    let (body, applied) = rle_encode(&ciphered);
    let body_bit_length = if applied { body.len() * 8 } else { key_bits };
    let body_bit_length = u32::try_from(body_bit_length).map_err(|_| {
        StegoError::BadHeader(format!("body of {body_bit_length} bits exceeds u32"))
    })?;
    Ok(Payload {
        header: PayloadHeader {
            flags: if applied { FLAG_RLE } else { 0 },
            body_bit_length,
        },
        body,
    })
}

pub fn decode_payload(
    payload: &Payload,
    cipher: &CipherKey,
    n_s: usize,
    cover_grid: GridDims,
) -> Result<KeyTable> {
    let key_bits = n_s * address_width(cover_grid.count()) as usize;
    let header = payload.header;
    if !header.rle_applied() && header.body_bit_length as usize != key_bits {
        return Err(StegoError::BitLength {
            expected: key_bits,
            actual: header.body_bit_length as usize,
        });
    }
    let ciphered = rle_decode(&payload.body, header.rle_applied())?;
    let plain = xor_cipher(&ciphered, cipher);
    let bits = BitString::from_padded_bytes(&plain, key_bits)?;
    deserialize_key(&bits, n_s, cover_grid)
}
