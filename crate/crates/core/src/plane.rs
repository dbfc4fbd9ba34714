//! Row-major sample grids and the three image kinds built from them.

use num_traits::{Float, NumCast, PrimInt, ToPrimitive};

use crate::error::{Result, StegoError};
use crate::scalar::Sample;

/// Image or plane size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub width: usize,
    pub height: usize,
}

impl Dims {
    pub fn new(width: usize, height: usize) -> Self {
        Self { width, height }
    }
}

impl std::fmt::Display for Dims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.height, self.width)
    }
}

/// A 2D grid of samples in row-major order. Index `(row, col)`, row first.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane<T> {
    width: usize,
    height: usize,
    samples: Vec<T>,
}

impl<T: Sample> Plane<T> {
    pub fn new(width: usize, height: usize, samples: Vec<T>) -> Result<Self> {
        if samples.len() != width * height {
            return Err(StegoError::SampleCount {
                width,
                height,
                actual: samples.len(),
            });
        }
        Ok(Self {
            width,
            height,
            samples,
        })
    }

    pub fn filled(width: usize, height: usize, value: T) -> Self {
        Self {
            width,
            height,
            samples: vec![value; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut samples = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                samples.push(f(row, col));
            }
        }
        Self {
            width,
            height,
            samples,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    /// `(width, height)`
    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.samples[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.samples[row * self.width + col] = value;
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [T] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    pub fn map<U: Sample>(&self, f: impl Fn(T) -> U) -> Plane<U> {
        Plane {
            width: self.width,
            height: self.height,
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn same_dims<U>(&self, other: &Plane<U>) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub(crate) fn require_even(&self) -> Result<()> {
        if !self.width.is_multiple_of(2) || !self.height.is_multiple_of(2) {
            return Err(StegoError::OddDimensions {
                width: self.width,
                height: self.height,
            });
        }
        Ok(())
    }
}

impl<T: Sample + ToPrimitive> Plane<T> {
    /// Lossless widening into another numeric type (`u8` to `i32`, `u8` to `f64`, ...).
    pub fn cast<U: Sample + NumCast>(&self) -> Plane<U> {
        self.map(|v| U::from(v).expect("widening cast"))
    }
}

impl<F: Sample + Float> Plane<F> {
    /// Converts a real plane to integers, rejecting any sample with a fractional part.
    pub fn try_to_integer<I: Sample + PrimInt>(&self) -> Result<Plane<I>> {
        let mut out = Vec::with_capacity(self.samples.len());
        for (index, &v) in self.samples.iter().enumerate() {
            if v.fract() != F::zero() || !v.is_finite() {
                return Err(StegoError::NonIntegerSample {
                    index,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
            let i = I::from(v).ok_or(StegoError::SampleOutOfRange {
                index,
                value: v.to_f64().unwrap_or(f64::NAN),
            })?;
            out.push(i);
        }
        Plane::new(self.width, self.height, out)
    }
}

/// Three 8-bit planes in R, G, B order.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    pub r: Plane<u8>,
    pub g: Plane<u8>,
    pub b: Plane<u8>,
}

/// Three 8-bit planes in Y, Cb, Cr order.
#[derive(Debug, Clone, PartialEq)]
pub struct YccImage {
    pub y: Plane<u8>,
    pub cb: Plane<u8>,
    pub cr: Plane<u8>,
}

/// A single 8-bit luminance plane.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    pub plane: Plane<u8>,
}

fn check_three(a: &Plane<u8>, b: &Plane<u8>, c: &Plane<u8>) -> Result<()> {
    if a.same_dims(b) && a.same_dims(c) {
        Ok(())
    } else {
        Err(StegoError::DimensionMismatch(format!(
            "channel planes {:?}, {:?}, {:?}",
            a.dims(),
            b.dims(),
            c.dims()
        )))
    }
}

impl RgbImage {
    pub fn new(r: Plane<u8>, g: Plane<u8>, b: Plane<u8>) -> Result<Self> {
        check_three(&r, &g, &b)?;
        Ok(Self { r, g, b })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [u8; 3],
    ) -> Self {
        let mut r = Plane::filled(width, height, 0);
        let mut g = r.clone();
        let mut b = r.clone();
        for row in 0..height {
            for col in 0..width {
                let [pr, pg, pb] = f(row, col);
                r.set(row, col, pr);
                g.set(row, col, pg);
                b.set(row, col, pb);
            }
        }
        Self { r, g, b }
    }

    pub fn width(&self) -> usize {
        self.r.width()
    }

    pub fn height(&self) -> usize {
        self.r.height()
    }

    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        [
            self.r.get(row, col),
            self.g.get(row, col),
            self.b.get(row, col),
        ]
    }

    pub fn planes(&self) -> [&Plane<u8>; 3] {
        [&self.r, &self.g, &self.b]
    }
}

impl YccImage {
    pub fn new(y: Plane<u8>, cb: Plane<u8>, cr: Plane<u8>) -> Result<Self> {
        check_three(&y, &cb, &cr)?;
        Ok(Self { y, cb, cr })
    }

    pub fn width(&self) -> usize {
        self.y.width()
    }

    pub fn height(&self) -> usize {
        self.y.height()
    }

    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        [
            self.y.get(row, col),
            self.cb.get(row, col),
            self.cr.get(row, col),
        ]
    }

    pub fn planes(&self) -> [&Plane<u8>; 3] {
        [&self.y, &self.cb, &self.cr]
    }
}

impl GrayImage {
    pub fn new(plane: Plane<u8>) -> Self {
        Self { plane }
    }

    pub fn width(&self) -> usize {
        self.plane.width()
    }

    pub fn height(&self) -> usize {
        self.plane.height()
    }
}
