#![allow(dead_code)]

use dwtstego::{GrayImage, Plane, RgbImage};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn clamp_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Smooth color field with a little texture noise.
pub fn smooth_cover(w: usize, h: usize, seed: u64) -> RgbImage {
    let mut r = rng(seed);
    let phase: [f64; 6] = std::array::from_fn(|_| r.gen_range(0.0..std::f64::consts::TAU));
    let freq: [f64; 6] = std::array::from_fn(|_| r.gen_range(1.0..5.0));
    RgbImage::from_fn(w, h, |row, col| {
        let (y, x) = (row as f64 / h as f64, col as f64 / w as f64);
        let mut px = [0u8; 3];
        for (ch, p) in px.iter_mut().enumerate() {
            let base = 128.0
                + 60.0 * (freq[ch] * x * 3.1 + phase[ch]).sin()
                + 50.0 * (freq[ch + 3] * y * 2.7 + phase[ch + 3]).cos()
                + r.gen_range(-6.0..6.0);
            *p = clamp_u8(base);
        }
        px
    })
}

pub fn noise_cover(w: usize, h: usize, seed: u64) -> RgbImage {
    let mut r = rng(seed);
    RgbImage::from_fn(w, h, |_, _| [r.gen(), r.gen(), r.gen()])
}

/// Gray secret built from a radial gradient, a checkerboard and noise.
pub fn textured_secret(w: usize, h: usize, seed: u64) -> GrayImage {
    let mut r = rng(seed);
    let cx = r.gen_range(0.2..0.8);
    let cy = r.gen_range(0.2..0.8);
    let cell = r.gen_range(4..16);
    GrayImage::new(Plane::from_fn(w, h, |row, col| {
        let (y, x) = (row as f64 / h as f64, col as f64 / w as f64);
        let dist = ((x - cx).powi(2) + (y - cy).powi(2)).sqrt();
        let checker = if (row / cell + col / cell) % 2 == 0 {
            25.0
        } else {
            -25.0
        };
        clamp_u8(200.0 - 220.0 * dist + checker + r.gen_range(-8.0..8.0))
    }))
}

pub fn random_gray(w: usize, h: usize, r: &mut impl Rng) -> GrayImage {
    GrayImage::new(Plane::from_fn(w, h, |_, _| r.gen()))
}
