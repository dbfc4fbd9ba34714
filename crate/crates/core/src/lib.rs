//! Color image steganography that hides a grayscale secret as a block-match
//! key.
//!
//! The secret's Haar LL band is described by, for each 2x2 block, the address
//! of the closest block in the cover's Cr LL band. That key is XOR-ciphered,
//! run-length coded, framed and written into the least significant bits of
//! the cover Cr channel's integer wavelet detail coefficients. The receiver
//! reads the key back and rebuilds the secret from the stego image itself.
//!
//! Planes and transforms are generic over the sample type; the aliases below
//! name the instantiations the pipeline uses.

pub mod bench;
pub mod bits;
pub mod codec;
pub mod color;
pub mod engine;
pub mod error;
pub mod io;
pub mod matcher;
pub mod metrics;
pub mod plane;
pub mod scalar;
pub mod wavelet;

pub use bits::BitString;
pub use codec::{CipherKey, Payload, PayloadHeader};
pub use engine::{embed, extract, EmbedOptions, StegoArtifact};
pub use error::{Result, StegoError};
pub use matcher::{GridDims, KeyTable};
pub use metrics::QualityReport;
pub use plane::{Dims, GrayImage, Plane, RgbImage, YccImage};
pub use wavelet::SubbandSet;

/// 8-bit image channel.
pub type PixelPlane = Plane<u8>;
/// Integer wavelet coefficients.
pub type CoeffPlane = Plane<i32>;
/// Haar coefficients and other real-valued planes.
pub type RealPlane = Plane<f64>;
/// Single-precision real plane.
pub type RealPlane32 = Plane<f32>;
pub type IntSubbands = SubbandSet<i32>;
pub type RealSubbands = SubbandSet<f64>;
