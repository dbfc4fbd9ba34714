//! Single-level 2D transforms.
//!
//! Both transforms work on 2x2 neighbourhoods anchored at `(2i, 2j)` with the
//! first index the row. Inside a neighbourhood `a` is top-left, `b` its right
//! neighbour, `c` the sample below `a` and `d` the diagonal one.
//!
//! * [`dwt2_haar`] / [`idwt2_haar`]: orthonormal real Haar (divisor 2).
//! * [`iwt_forward`] / [`iwt_inverse`]: integer-to-integer transform,
//!   `LL = floor((a + c) / 2)`, `HL = c - a`, `LH = b - a`, `HH = d - a`.
//!   The inverse recovers `a = LL - floor(HL / 2)` and adds the differences
//!   back, so the pair is a bijection on integer grids.

use crate::error::{Result, StegoError};
use crate::plane::Plane;
use crate::scalar::{floor_half, IntCoeff, Real, Sample};

/// The four quarter-size planes of one decomposition level.
#[derive(Debug, Clone, PartialEq)]
pub struct SubbandSet<T> {
    pub ll: Plane<T>,
    pub hl: Plane<T>,
    pub lh: Plane<T>,
    pub hh: Plane<T>,
}

impl<T: Sample> SubbandSet<T> {
    pub fn new(ll: Plane<T>, hl: Plane<T>, lh: Plane<T>, hh: Plane<T>) -> Result<Self> {
        let s = Self { ll, hl, lh, hh };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        if self.ll.same_dims(&self.hl) && self.ll.same_dims(&self.lh) && self.ll.same_dims(&self.hh)
        {
            Ok(())
        } else {
            Err(StegoError::DimensionMismatch(format!(
                "subbands LL {:?}, HL {:?}, LH {:?}, HH {:?}",
                self.ll.dims(),
                self.hl.dims(),
                self.lh.dims(),
                self.hh.dims()
            )))
        }
    }

    /// `(width, height)` of each subband.
    pub fn band_dims(&self) -> (usize, usize) {
        self.ll.dims()
    }

    /// Detail bands in embedding scan order: HL, LH, HH.
    pub fn details(&self) -> [&Plane<T>; 3] {
        [&self.hl, &self.lh, &self.hh]
    }

    pub fn details_mut(&mut self) -> [&mut Plane<T>; 3] {
        [&mut self.hl, &mut self.lh, &mut self.hh]
    }
}

/// Runs `f` over each 2x2 neighbourhood, writing one value per subband.
fn analyze<T: Sample, U: Sample>(
    p: &Plane<T>,
    f: impl Fn(T, T, T, T) -> [U; 4],
) -> Result<SubbandSet<U>> {
    p.require_even()?;
    let (w, h) = (p.width() / 2, p.height() / 2);
    let mut bands: [Vec<U>; 4] = Default::default();
    for band in bands.iter_mut() {
        band.reserve(w * h);
    }
    for i in 0..h {
        for j in 0..w {
            let a = p.get(2 * i, 2 * j);
            let b = p.get(2 * i, 2 * j + 1);
            let c = p.get(2 * i + 1, 2 * j);
            let d = p.get(2 * i + 1, 2 * j + 1);
            for (band, v) in bands.iter_mut().zip(f(a, b, c, d)) {
                band.push(v);
            }
        }
    }
    let [ll, hl, lh, hh] = bands.map(|s| Plane::new(w, h, s).expect("band size"));
    Ok(SubbandSet { ll, hl, lh, hh })
}

fn synthesize<T: Sample>(s: &SubbandSet<T>, f: impl Fn(T, T, T, T) -> [T; 4]) -> Result<Plane<T>> {
    s.check()?;
    let (w, h) = s.band_dims();
    let mut out = Plane::filled(2 * w, 2 * h, T::default());
    for i in 0..h {
        for j in 0..w {
            let [a, b, c, d] = f(
                s.ll.get(i, j),
                s.hl.get(i, j),
                s.lh.get(i, j),
                s.hh.get(i, j),
            );
            out.set(2 * i, 2 * j, a);
            out.set(2 * i, 2 * j + 1, b);
            out.set(2 * i + 1, 2 * j, c);
            out.set(2 * i + 1, 2 * j + 1, d);
        }
    }
    Ok(out)
}

pub fn dwt2_haar<F: Real>(p: &Plane<F>) -> Result<SubbandSet<F>> {
    let two = F::one() + F::one();
    analyze(p, |a, b, c, d| {
        [
            (a + b + c + d) / two,
            (a - b + c - d) / two,
            (a + b - c - d) / two,
            (a - b - c + d) / two,
        ]
    })
}

pub fn idwt2_haar<F: Real>(s: &SubbandSet<F>) -> Result<Plane<F>> {
    let two = F::one() + F::one();
    synthesize(s, |ll, hl, lh, hh| {
        [
            (ll + hl + lh + hh) / two,
            (ll - hl + lh - hh) / two,
            (ll + hl - lh - hh) / two,
            (ll - hl - lh + hh) / two,
        ]
    })
}

pub fn iwt_forward<I: IntCoeff>(p: &Plane<I>) -> Result<SubbandSet<I>> {
    analyze(p, |a, b, c, d| [floor_half(a + c), c - a, b - a, d - a])
}

pub fn iwt_inverse<I: IntCoeff>(s: &SubbandSet<I>) -> Result<Plane<I>> {
    synthesize(s, |ll, hl, lh, hh| {
        let a = ll - floor_half(hl);
        [a, a + lh, a + hl, a + hh]
    })
}
