//! Lossless image files.
//!
//! PNG is the container for everything this crate writes; PNG and binary
//! PNM (PGM/PPM) are accepted on read. A canonical stego artifact is a
//! three-channel PNG whose channels hold Y, Cb, Cr in that order, named
//! `<stem>.ycc.png`.

use std::path::Path;

use image::{ColorType, DynamicImage, ImageFormat, ImageReader};

use crate::error::{Result, StegoError};
use crate::plane::{GrayImage, Plane, RgbImage, YccImage};

/// Suffix inserted before the container extension for canonical stego files.
pub const YCC_SUFFIX: &str = ".ycc";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageKind {
    Rgb,
    Gray,
    Ycc,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyImage {
    Rgb(RgbImage),
    Gray(GrayImage),
    Ycc(YccImage),
}

impl ImageKind {
    fn channels(self) -> usize {
        match self {
            ImageKind::Gray => 1,
            ImageKind::Rgb | ImageKind::Ycc => 3,
        }
    }
}

/// True when the file name carries the canonical `.ycc` marker.
pub fn is_canonical_stego_path(path: &Path) -> bool {
    path.file_stem()
        .and_then(|s| s.to_str())
        .map(|s| s.ends_with(YCC_SUFFIX))
        .unwrap_or(false)
}

fn decode_err(path: &Path, reason: impl ToString) -> StegoError {
    StegoError::Decode {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    }
}

fn io_err(path: &Path, source: std::io::Error) -> StegoError {
    StegoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn split_planes(raw: &[u8], width: usize, height: usize) -> [Plane<u8>; 3] {
    let mut planes = [
        Vec::with_capacity(width * height),
        Vec::with_capacity(width * height),
        Vec::with_capacity(width * height),
    ];
    for px in raw.chunks_exact(3) {
        for (p, &v) in planes.iter_mut().zip(px) {
            p.push(v);
        }
    }
    planes.map(|s| Plane::new(width, height, s).expect("decoded buffer size"))
}

fn interleave(planes: [&Plane<u8>; 3]) -> Vec<u8> {
    let n = planes[0].len();
    let mut out = Vec::with_capacity(n * 3);
    for i in 0..n {
        for p in planes {
            out.push(p.samples()[i]);
        }
    }
    out
}

pub fn load_image(path: impl AsRef<Path>, expected: ImageKind) -> Result<AnyImage> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)
        .map_err(|e| io_err(path, e))?
        .with_guessed_format()
        .map_err(|e| io_err(path, e))?;
    match reader.format() {
        Some(ImageFormat::Png) | Some(ImageFormat::Pnm) => {}
        Some(other) => {
            return Err(StegoError::UnsupportedFormat(format!(
                "{}: {other:?} is not a lossless container this tool reads",
                path.display()
            )))
        }
        None => return Err(decode_err(path, "unrecognised image format")),
    }
    let img = reader.decode().map_err(|e| decode_err(path, e))?;
    let (width, height) = (img.width() as usize, img.height() as usize);
    let found = img.color().channel_count() as usize;
    if img.color().bytes_per_pixel() as usize != found {
        return Err(StegoError::UnsupportedFormat(format!(
            "{}: only 8-bit channels are supported, found {:?}",
            path.display(),
            img.color()
        )));
    }
    if found != expected.channels() {
        return Err(StegoError::WrongChannelCount {
            path: path.to_path_buf(),
            expected: expected.channels(),
            found,
        });
    }
    Ok(match (expected, img) {
        (ImageKind::Gray, DynamicImage::ImageLuma8(buf)) => AnyImage::Gray(GrayImage::new(
            Plane::new(width, height, buf.into_raw()).expect("decoded buffer size"),
        )),
        (ImageKind::Rgb, DynamicImage::ImageRgb8(buf)) => {
            let [r, g, b] = split_planes(buf.as_raw(), width, height);
            AnyImage::Rgb(RgbImage { r, g, b })
        }
        (ImageKind::Ycc, DynamicImage::ImageRgb8(buf)) => {
            let [y, cb, cr] = split_planes(buf.as_raw(), width, height);
            AnyImage::Ycc(YccImage { y, cb, cr })
        }
        (_, other) => {
            return Err(StegoError::UnsupportedFormat(format!(
                "{}: unexpected pixel layout {:?}",
                path.display(),
                other.color()
            )))
        }
    })
}

/// Loads a gray or three-channel file, choosing the kind from the channel count.
/// Three-channel files come back as [`AnyImage::Rgb`].
pub fn load_any(path: impl AsRef<Path>) -> Result<AnyImage> {
    let path = path.as_ref();
    match load_image(path, ImageKind::Rgb) {
        Err(StegoError::WrongChannelCount { found: 1, .. }) => load_image(path, ImageKind::Gray),
        other => other,
    }
}

pub fn load_rgb(path: impl AsRef<Path>) -> Result<RgbImage> {
    match load_image(path, ImageKind::Rgb)? {
        AnyImage::Rgb(img) => Ok(img),
        _ => unreachable!(),
    }
}

pub fn load_gray(path: impl AsRef<Path>) -> Result<GrayImage> {
    match load_image(path, ImageKind::Gray)? {
        AnyImage::Gray(img) => Ok(img),
        _ => unreachable!(),
    }
}

pub fn load_ycc(path: impl AsRef<Path>) -> Result<YccImage> {
    match load_image(path, ImageKind::Ycc)? {
        AnyImage::Ycc(img) => Ok(img),
        _ => unreachable!(),
    }
}

fn output_format(path: &Path) -> Result<ImageFormat> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase());
    match ext.as_deref() {
        Some("png") => Ok(ImageFormat::Png),
        Some("pgm") | Some("ppm") | Some("pnm") => Ok(ImageFormat::Pnm),
        _ => Err(StegoError::UnsupportedFormat(format!(
            "{}: output must be .png, .pgm or .ppm",
            path.display()
        ))),
    }
}

pub fn save_image(img: &AnyImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let format = output_format(path)?;
    let (raw, width, height, color) = match img {
        AnyImage::Gray(g) => (
            g.plane.samples().to_vec(),
            g.width(),
            g.height(),
            ColorType::L8,
        ),
        AnyImage::Rgb(c) => (
            interleave(c.planes()),
            c.width(),
            c.height(),
            ColorType::Rgb8,
        ),
        AnyImage::Ycc(c) => (
            interleave(c.planes()),
            c.width(),
            c.height(),
            ColorType::Rgb8,
        ),
    };
    image::save_buffer_with_format(path, &raw, width as u32, height as u32, color, format).map_err(
        |e| match e {
            image::ImageError::IoError(source) => io_err(path, source),
            other => StegoError::Encode {
                path: path.to_path_buf(),
                reason: other.to_string(),
            },
        },
    )
}

pub fn save_rgb(img: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    save_image(&AnyImage::Rgb(img.clone()), path)
}

pub fn save_gray(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    save_image(&AnyImage::Gray(img.clone()), path)
}

pub fn save_ycc(img: &YccImage, path: impl AsRef<Path>) -> Result<()> {
    save_image(&AnyImage::Ycc(img.clone()), path)
}
