//! Mean squared error and PSNR.
//!
//! MSE is the mean of squared sample differences over every sample of every
//! channel. PSNR is `10 * log10(l_max^2 / mse)` in dB, and `+inf` when the
//! inputs are identical.

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Result, StegoError};
use crate::plane::{GrayImage, Plane, RgbImage, YccImage};
use crate::scalar::Sample;

/// Peak value of an 8-bit channel.
pub const L_MAX_8BIT: f64 = 255.0;

/// Something made of one or more same-sized planes.
pub trait Channels {
    type Sample: Sample + ToPrimitive;
    fn channels(&self) -> Vec<&Plane<Self::Sample>>;
}

impl<T: Sample + ToPrimitive> Channels for Plane<T> {
    type Sample = T;
    fn channels(&self) -> Vec<&Plane<T>> {
        vec![self]
    }
}

impl Channels for GrayImage {
    type Sample = u8;
    fn channels(&self) -> Vec<&Plane<u8>> {
        vec![&self.plane]
    }
}

impl Channels for RgbImage {
    type Sample = u8;
    fn channels(&self) -> Vec<&Plane<u8>> {
        self.planes().to_vec()
    }
}

impl Channels for YccImage {
    type Sample = u8;
    fn channels(&self) -> Vec<&Plane<u8>> {
        self.planes().to_vec()
    }
}

pub fn mse<C: Channels>(a: &C, b: &C) -> Result<f64> {
    let (ca, cb) = (a.channels(), b.channels());
    if ca.len() != cb.len() || ca.iter().zip(&cb).any(|(p, q)| !p.same_dims(q)) {
        return Err(StegoError::DimensionMismatch(format!(
            "cannot compare {:?} with {:?}",
            ca.iter().map(|p| p.dims()).collect::<Vec<_>>(),
            cb.iter().map(|p| p.dims()).collect::<Vec<_>>()
        )));
    }
    let mut sum = 0.0;
    let mut n = 0usize;
    for (p, q) in ca.iter().zip(&cb) {
        for (x, y) in p.samples().iter().zip(q.samples()) {
            let d = x.to_f64().unwrap() - y.to_f64().unwrap();
            sum += d * d;
        }
        n += p.len();
    }
    if n == 0 {
        return Err(StegoError::EmptyPlane);
    }
    Ok(sum / n as f64)
}

pub fn psnr_from_mse(mse: f64, l_max: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (l_max * l_max / mse).log10()
    }
}

pub fn psnr<C: Channels>(a: &C, b: &C, l_max: f64) -> Result<f64> {
    Ok(psnr_from_mse(mse(a, b)?, l_max))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    /// `f64::INFINITY` when `mse == 0`.
    pub psnr_db: f64,
    pub l_max: f64,
}

impl QualityReport {
    pub fn measure<C: Channels>(a: &C, b: &C, l_max: f64) -> Result<Self> {
        let mse = mse(a, b)?;
        Ok(Self {
            mse,
            psnr_db: psnr_from_mse(mse, l_max),
            l_max,
        })
    }
}

/// Formats a PSNR value with two decimals, or `inf`.
pub fn format_psnr(db: f64) -> String {
    if db.is_infinite() {
        "inf".to_string()
    } else {
        format!("{db:.2}")
    }
}

impl fmt::Display for QualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MSE {:.6}  PSNR {} dB",
            self.mse,
            format_psnr(self.psnr_db)
        )
    }
}
