//! Embedding and extraction pipelines.
//!
//! Embedding hides only the block-match key, never the secret pixels:
//!
//! 1. Convert the cover to YCbCr and take the Haar LL band of Cr.
//! 2. Take the Haar LL band of the secret and match every 2x2 block against
//!    the cover LL, giving a [`KeyTable`].
//! 3. Cipher, compress and frame the key as a [`Payload`].
//! 4. Clamp Cr to `[4, 251]`, write the stream into the LSBs of its integer
//!    wavelet detail coefficients and invert the transform.
//!
//! The stream written into the coefficients is
//! `[payload header: 8][secret height: u16 BE][secret width: u16 BE][body]`,
//! MSB first, scanning HL then LH then HH, each row-major.

use crate::bits::BitString;
use crate::codec::{decode_payload, encode_payload, CipherKey, Payload, PayloadHeader, HEADER_LEN};
use crate::color::rgb_to_ycbcr;
use crate::error::{Result, StegoError};
use crate::matcher::{generate_key, reconstruct_secret_ll, GridDims, KeyTable};
use crate::plane::{Dims, GrayImage, Plane, RgbImage, YccImage};
use crate::scalar::{parity, round_to_u8};
use crate::wavelet::{dwt2_haar, idwt2_haar, iwt_forward, iwt_inverse, SubbandSet};

/// Cr samples are clamped into this range before embedding. A single LSB
/// rewrite moves a reconstructed pixel by at most one level, so no sample can
/// leave `[0, 255]` afterwards.
pub const PRE_CLAMP: (u8, u8) = (4, 251);

/// Length of the secret-dimensions extension that follows the payload header.
pub const DIMS_EXT_LEN: usize = 4;

const PREFIX_BITS: usize = (HEADER_LEN + DIMS_EXT_LEN) * 8;

#[derive(Debug, Clone)]
pub struct EmbedOptions {
    pub cipher_key: CipherKey,
}

impl EmbedOptions {
    pub fn new(cipher_key: CipherKey) -> Self {
        Self { cipher_key }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StegoMeta {
    pub cover_dims: Dims,
    pub secret_dims: Dims,
    pub n_s: usize,
    pub cover_grid: GridDims,
}

/// Canonical stego object: the YCbCr planes plus what its embedded header says.
#[derive(Debug, Clone, PartialEq)]
pub struct StegoArtifact {
    pub image: YccImage,
    pub meta: StegoMeta,
}

impl StegoArtifact {
    /// Reads the metadata back out of the embedded stream header.
    pub fn from_image(image: YccImage) -> Result<Self> {
        let (_, secret_dims) = read_prefix(&image.cr)?;
        let meta = meta_for(&image.cr, secret_dims);
        Ok(Self { image, meta })
    }
}

fn meta_for(cr: &Plane<u8>, secret_dims: Dims) -> StegoMeta {
    StegoMeta {
        cover_dims: Dims::new(cr.width(), cr.height()),
        secret_dims,
        n_s: secret_block_count(secret_dims),
        cover_grid: cover_grid(cr),
    }
}

/// Secret LL blocks: the secret is halved by the DWT, then cut into 2x2 blocks.
fn secret_block_count(d: Dims) -> usize {
    (d.width / 4) * (d.height / 4)
}

fn cover_grid(cr: &Plane<u8>) -> GridDims {
    GridDims::of_plane_dims((cr.width() / 2, cr.height() / 2))
}

fn require_multiple_of_4(d: Dims) -> Result<()> {
    if !d.width.is_multiple_of(4) || !d.height.is_multiple_of(4) || d.width == 0 || d.height == 0 {
        return Err(StegoError::DimensionsNotMultiple {
            width: d.width,
            height: d.height,
            multiple: 4,
        });
    }
    Ok(())
}

fn plane_capacity(cr: &Plane<u8>) -> Result<usize> {
    cr.require_even()?;
    Ok(3 * (cr.width() / 2) * (cr.height() / 2))
}

/// One payload bit per HL/LH/HH coefficient of the Cr channel.
pub fn capacity_bits(cover: &YccImage) -> Result<usize> {
    plane_capacity(&cover.cr)
}

fn coefficient_transform(cr: &Plane<u8>) -> Result<SubbandSet<i32>> {
    iwt_forward(&cr.cast::<i32>())
}

/// Replaces the parity of the first `bits.len()` detail coefficients.
///
/// Fails rather than clamping if a reconstructed sample leaves `[0, 255]`;
/// with input inside [`PRE_CLAMP`] that cannot happen.
pub fn embed_bits_iwt(cr: &Plane<u8>, bits: &BitString) -> Result<Plane<u8>> {
    let capacity = plane_capacity(cr)?;
    if bits.len() > capacity {
        return Err(StegoError::CapacityExceeded {
            needed: bits.len(),
            capacity,
        });
    }
    let mut bands = coefficient_transform(cr)?;
    let mut stream = bits.iter();
    'scan: for band in bands.details_mut() {
        for v in band.samples_mut() {
            match stream.next() {
                Some(bit) => *v = *v - parity(*v) + bit as i32,
                None => break 'scan,
            }
        }
    }
    let out = iwt_inverse(&bands)?;
    let mut samples = Vec::with_capacity(out.len());
    for (index, &v) in out.samples().iter().enumerate() {
        let px = u8::try_from(v).map_err(|_| StegoError::PixelOverflow {
            index,
            value: v as i64,
        })?;
        samples.push(px);
    }
    Plane::new(out.width(), out.height(), samples)
}

pub fn extract_bits_iwt(cr: &Plane<u8>, n: usize) -> Result<BitString> {
    let capacity = plane_capacity(cr)?;
    if n > capacity {
        return Err(StegoError::CapacityExceeded {
            needed: n,
            capacity,
        });
    }
    let bands = coefficient_transform(cr)?;
    Ok(BitString::from_bools(
        bands
            .details()
            .into_iter()
            .flat_map(|b| b.samples().iter())
            .take(n)
            .map(|&v| parity(v) == 1),
    ))
}

fn read_prefix(cr: &Plane<u8>) -> Result<(PayloadHeader, Dims)> {
    let capacity = plane_capacity(cr)?;
    if capacity < PREFIX_BITS {
        return Err(StegoError::BadHeader(format!(
            "cover capacity {capacity} bits is smaller than the {PREFIX_BITS}-bit header"
        )));
    }
    let bits = extract_bits_iwt(cr, PREFIX_BITS)?;
    let bytes = bits.as_bytes();
    let header = PayloadHeader::parse(&bytes[..HEADER_LEN])?;
    let ext = &bytes[HEADER_LEN..];
    let dims = Dims::new(
        u16::from_be_bytes([ext[2], ext[3]]) as usize,
        u16::from_be_bytes([ext[0], ext[1]]) as usize,
    );
    Ok((header, dims))
}

fn haar_ll(p: &Plane<u8>) -> Result<Plane<f64>> {
    Ok(dwt2_haar(&p.cast::<f64>())?.ll)
}

/// Rebuilds the secret from a Cr plane and its key: match blocks into an LL
/// band, zero the detail bands, invert the Haar transform, round and clamp.
pub fn regenerate_secret(cr: &Plane<u8>, key: &KeyTable, secret_dims: Dims) -> Result<GrayImage> {
    require_multiple_of_4(secret_dims)?;
    let stego_ll = haar_ll(cr)?;
    let grid = GridDims::of_plane_dims((secret_dims.width / 2, secret_dims.height / 2));
    let ll = reconstruct_secret_ll(&stego_ll, key, grid)?;
    let zero = Plane::filled(ll.width(), ll.height(), 0.0f64);
    let bands = SubbandSet::new(ll, zero.clone(), zero.clone(), zero)?;
    let secret = idwt2_haar(&bands)?;
    Ok(GrayImage::new(secret.map(round_to_u8)))
}

/// Everything [`embed_detailed`] produces.
#[derive(Debug, Clone)]
pub struct EmbedOutcome {
    pub artifact: StegoArtifact,
    pub key: KeyTable,
    pub payload: Payload,
    /// Bits written into the coefficients, header and extension included.
    pub stream_bits: usize,
    pub capacity_bits: usize,
}

pub fn embed(cover: &RgbImage, secret: &GrayImage, opts: &EmbedOptions) -> Result<StegoArtifact> {
    Ok(embed_detailed(cover, secret, opts)?.artifact)
}

pub fn embed_detailed(
    cover: &RgbImage,
    secret: &GrayImage,
    opts: &EmbedOptions,
) -> Result<EmbedOutcome> {
    let cover_dims = Dims::new(cover.width(), cover.height());
    let secret_dims = Dims::new(secret.width(), secret.height());
    require_multiple_of_4(cover_dims)?;
    require_multiple_of_4(secret_dims)?;
    let (h, w) = match (
        u16::try_from(secret_dims.height),
        u16::try_from(secret_dims.width),
    ) {
        (Ok(h), Ok(w)) => (h, w),
        _ => {
            return Err(StegoError::DimensionMismatch(format!(
                "secret {secret_dims} does not fit the 16-bit dimension fields"
            )))
        }
    };

    let ycc = rgb_to_ycbcr(cover);
    let cover_ll = haar_ll(&ycc.cr)?;
    let secret_ll = haar_ll(&secret.plane)?;
    let key = generate_key(&cover_ll, &secret_ll)?;
    let payload = encode_payload(&key, &opts.cipher_key)?;

    let mut stream = BitString::with_capacity(PREFIX_BITS + payload.body.len() * 8);
    let mut prefix = payload.header.to_bytes().to_vec();
    prefix.extend_from_slice(&h.to_be_bytes());
    prefix.extend_from_slice(&w.to_be_bytes());
    for &byte in prefix.iter().chain(&payload.body) {
        stream.push_bits(byte as u64, 8);
    }

    let capacity = capacity_bits(&ycc)?;
    if stream.len() > capacity {
        return Err(StegoError::CapacityExceeded {
            needed: stream.len(),
            capacity,
        });
    }

    let (lo, hi) = PRE_CLAMP;
    let clamped = ycc.cr.map(|v| v.clamp(lo, hi));
    let cr = embed_bits_iwt(&clamped, &stream)?;
    let meta = meta_for(&cr, secret_dims);
    let image = YccImage::new(ycc.y, ycc.cb, cr)?;
    Ok(EmbedOutcome {
        artifact: StegoArtifact { image, meta },
        key,
        stream_bits: stream.len(),
        capacity_bits: capacity,
        payload,
    })
}

/// Recovers the key table hidden in a stego image.
///
/// `secret_dims` overrides the dimensions stored in the stream.
pub fn extract_key(
    stego: &StegoArtifact,
    opts: &EmbedOptions,
    secret_dims: Option<Dims>,
) -> Result<(KeyTable, Dims)> {
    let cr = &stego.image.cr;
    let (header, stored) = read_prefix(cr)?;
    let secret_dims = secret_dims.unwrap_or(stored);
    require_multiple_of_4(secret_dims)?;
    let total = PREFIX_BITS + header.body_len() * 8;
    let bits = extract_bits_iwt(cr, total).map_err(|e| match e {
        StegoError::CapacityExceeded { needed, capacity } => StegoError::BadHeader(format!(
            "header announces {needed} bits but the cover holds {capacity}"
        )),
        other => other,
    })?;
    let payload = Payload {
        header,
        body: bits.as_bytes()[PREFIX_BITS / 8..].to_vec(),
    };
    let key = decode_payload(
        &payload,
        &opts.cipher_key,
        secret_block_count(secret_dims),
        cover_grid(cr),
    )?;
    Ok((key, secret_dims))
}

pub fn extract(
    stego: &StegoArtifact,
    opts: &EmbedOptions,
    secret_dims: Option<Dims>,
) -> Result<GrayImage> {
    let (key, dims) = extract_key(stego, opts, secret_dims)?;
    regenerate_secret(&stego.image.cr, &key, dims)
}
