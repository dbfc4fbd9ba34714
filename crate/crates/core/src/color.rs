//! Full-range BT.601 RGB <-> YCbCr with round-half-up and clamping.

use crate::plane::{Plane, RgbImage, YccImage};
use crate::scalar::round_to_u8;

#[inline]
pub fn rgb_to_ycbcr_pixel([r, g, b]: [u8; 3]) -> [u8; 3] {
    let (r, g, b) = (r as f64, g as f64, b as f64);
    let y = 0.299 * r + 0.587 * g + 0.114 * b;
    let cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b;
    let cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b;
    [round_to_u8(y), round_to_u8(cb), round_to_u8(cr)]
}

#[inline]
pub fn ycbcr_to_rgb_pixel([y, cb, cr]: [u8; 3]) -> [u8; 3] {
    let y = y as f64;
    let cb = cb as f64 - 128.0;
    let cr = cr as f64 - 128.0;
    let r = y + 1.402 * cr;
    let g = y - 0.344136 * cb - 0.714136 * cr;
    let b = y + 1.772 * cb;
    [round_to_u8(r), round_to_u8(g), round_to_u8(b)]
}

fn convert3(
    a: &Plane<u8>,
    b: &Plane<u8>,
    c: &Plane<u8>,
    f: fn([u8; 3]) -> [u8; 3],
) -> [Plane<u8>; 3] {
    let (w, h) = a.dims();
    let mut out = [
        Plane::filled(w, h, 0u8),
        Plane::filled(w, h, 0u8),
        Plane::filled(w, h, 0u8),
    ];
    for i in 0..a.len() {
        let px = f([a.samples()[i], b.samples()[i], c.samples()[i]]);
        for (plane, v) in out.iter_mut().zip(px) {
            plane.samples_mut()[i] = v;
        }
    }
    out
}

pub fn rgb_to_ycbcr(img: &RgbImage) -> YccImage {
    let [y, cb, cr] = convert3(&img.r, &img.g, &img.b, rgb_to_ycbcr_pixel);
    YccImage { y, cb, cr }
}

pub fn ycbcr_to_rgb(img: &YccImage) -> RgbImage {
    let [r, g, b] = convert3(&img.y, &img.cb, &img.cr, ycbcr_to_rgb_pixel);
    RgbImage { r, g, b }
}
