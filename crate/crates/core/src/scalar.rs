//! Scalar traits shared by planes, transforms and metrics.
//!
//! Pixel planes hold `u8`, integer wavelet coefficients any signed primitive
//! integer, and Haar coefficients any float. The traits below gather the
//! `num-traits` bounds each family needs.

use std::fmt::Debug;

use num_traits::{Euclid, Float, NumCast, PrimInt, Signed, ToPrimitive};

/// Anything that can live in a [`Plane`](crate::Plane).
pub trait Sample: Copy + Default + PartialEq + Debug + Send + Sync + 'static {}

impl<T> Sample for T where T: Copy + Default + PartialEq + Debug + Send + Sync + 'static {}

/// Real-valued coefficients (Haar DWT, block matching).
pub trait Real: Float + Sample + NumCast + ToPrimitive {}

impl<T> Real for T where T: Float + Sample + NumCast + ToPrimitive {}

/// Signed integer coefficients for the integer wavelet transform.
///
/// Floor semantics come from [`Euclid`]: for a positive divisor Euclidean
/// division and floored division coincide.
pub trait IntCoeff: PrimInt + Signed + Euclid + Sample {}

impl<T> IntCoeff for T where T: PrimInt + Signed + Euclid + Sample {}

/// `floor(v / 2)`.
#[inline]
pub fn floor_half<I: IntCoeff>(v: I) -> I {
    v.div_euclid(&(I::one() + I::one()))
}

/// Floored `v mod 2`, always 0 or 1.
#[inline]
pub fn parity<I: IntCoeff>(v: I) -> I {
    v.rem_euclid(&(I::one() + I::one()))
}

/// Round half up (`floor(x + 0.5)`) and clamp to `[0, 255]`.
#[inline]
pub fn round_to_u8<F: Float>(x: F) -> u8 {
    let half = F::from(0.5).unwrap();
    let r = (x + half).floor();
    if r.is_nan() || r <= F::zero() {
        0
    } else if r >= F::from(255.0).unwrap() {
        255
    } else {
        r.to_u8().unwrap()
    }
}
