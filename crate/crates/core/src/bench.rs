//! Cover x secret benchmark: embed, measure, extract, measure.
//!
//! Config files are line-oriented `key = value` text. `#` starts a comment.
//! `cover` and `secret` may repeat; relative paths resolve against the
//! config file's directory.
//!
//! ```text
//! cover = covers/lena.png
//! cover = covers/peppers.png
//! secret = secrets/football.pgm
//! key = 5365637265744b6579
//! output_dir = out        # optional: write stego, preview and secret files
//! format = csv            # text (default) or csv
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::codec::CipherKey;
use crate::color::{rgb_to_ycbcr, ycbcr_to_rgb};
use crate::engine::{embed_detailed, extract_key, regenerate_secret, EmbedOptions, StegoArtifact};
use crate::error::{Result, StegoError};
use crate::io::{load_gray, load_rgb, load_ycc, save_gray, save_rgb, save_ycc};
use crate::metrics::{format_psnr, psnr, L_MAX_8BIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub covers: Vec<PathBuf>,
    pub secrets: Vec<PathBuf>,
    pub cipher_key: CipherKey,
    pub output_dir: Option<PathBuf>,
    pub report_format: ReportFormat,
}

pub fn parse_hex_key(s: &str) -> Result<CipherKey> {
    let bytes = hex::decode(s.trim())
        .map_err(|e| StegoError::Config(format!("cipher key is not valid hex: {e}")))?;
    if bytes.is_empty() {
        return Err(StegoError::Config("cipher key must not be empty".into()));
    }
    CipherKey::new(bytes)
}

impl BenchConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| StegoError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut covers = Vec::new();
        let mut secrets = Vec::new();
        let mut key = None;
        let mut output_dir = None;
        let mut report_format = ReportFormat::Text;
        let resolve = |v: &str| {
            let p = PathBuf::from(v);
            if p.is_absolute() {
                p
            } else {
                base_dir.join(p)
            }
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                StegoError::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "cover" => covers.push(resolve(v)),
                "secret" => secrets.push(resolve(v)),
                "key" => key = Some(parse_hex_key(v)?),
                "output_dir" => output_dir = Some(resolve(v)),
                "format" => {
                    report_format = match v {
                        "text" => ReportFormat::Text,
                        "csv" => ReportFormat::Csv,
                        other => {
                            return Err(StegoError::Config(format!(
                                "line {}: unknown format `{other}`",
                                lineno + 1
                            )))
                        }
                    }
                }
                other => {
                    return Err(StegoError::Config(format!(
                        "line {}: unknown setting `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        if covers.is_empty() {
            return Err(StegoError::Config("no cover images listed".into()));
        }
        if secrets.is_empty() {
            return Err(StegoError::Config("no secret images listed".into()));
        }
        let cipher_key = key.ok_or_else(|| StegoError::Config("missing `key`".into()))?;
        Ok(Self {
            covers,
            secrets,
            cipher_key,
            output_dir,
            report_format,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellMetrics {
    pub stego_psnr_rgb: f64,
    pub stego_psnr_cr: f64,
    pub secret_psnr: f64,
    pub key_recovered: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchCell {
    pub cover: String,
    pub secret: String,
    pub outcome: std::result::Result<CellMetrics, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub covers: Vec<String>,
    pub secrets: Vec<String>,
    /// Row-major over covers, then secrets.
    pub cells: Vec<BenchCell>,
}

fn label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run_cell(cover_path: &Path, secret_path: &Path, config: &BenchConfig) -> Result<CellMetrics> {
    let cover = load_rgb(cover_path)?;
    let secret = load_gray(secret_path)?;
    let opts = EmbedOptions::new(config.cipher_key.clone());
    let outcome = embed_detailed(&cover, &secret, &opts)?;

    let mut artifact = outcome.artifact.clone();
    let preview = ycbcr_to_rgb(&artifact.image);
    if let Some(dir) = &config.output_dir {
        let stem = format!("{}__{}", label(cover_path), label(secret_path));
        let canonical = dir.join(format!("{stem}.ycc.png"));
        save_ycc(&artifact.image, &canonical)?;
        save_rgb(&preview, dir.join(format!("{stem}.png")))?;
        artifact = StegoArtifact::from_image(load_ycc(&canonical)?)?;
    }

    let (key, dims) = extract_key(&artifact, &opts, None)?;
    let extracted = regenerate_secret(&artifact.image.cr, &key, dims)?;
    if let Some(dir) = &config.output_dir {
        let stem = format!("{}__{}", label(cover_path), label(secret_path));
        save_gray(&extracted, dir.join(format!("{stem}.secret.png")))?;
    }

    Ok(CellMetrics {
        stego_psnr_rgb: psnr(&cover, &preview, L_MAX_8BIT)?,
        stego_psnr_cr: psnr(&rgb_to_ycbcr(&cover).cr, &artifact.image.cr, L_MAX_8BIT)?,
        secret_psnr: psnr(&secret, &extracted, L_MAX_8BIT)?,
        key_recovered: key == outcome.key,
    })
}

/// Runs every cover x secret pair. Pair failures are recorded, not fatal.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if let Some(dir) = &config.output_dir {
        std::fs::create_dir_all(dir).map_err(|source| StegoError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    let pairs: Vec<(&PathBuf, &PathBuf)> = config
        .covers
        .iter()
        .flat_map(|c| config.secrets.iter().map(move |s| (c, s)))
        .collect();
    let cells = pairs
        .par_iter()
        .map(|(c, s)| BenchCell {
            cover: label(c),
            secret: label(s),
            outcome: run_cell(c, s, config).map_err(|e| e.to_string()),
        })
        .collect();
    Ok(BenchReport {
        covers: config.covers.iter().map(|p| label(p)).collect(),
        secrets: config.secrets.iter().map(|p| label(p)).collect(),
        cells,
    })
}

impl BenchReport {
    pub fn cell(&self, cover: usize, secret: usize) -> &BenchCell {
        &self.cells[cover * self.secrets.len() + secret]
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.to_text(),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    fn table(&self, out: &mut String, title: &str, pick: fn(&CellMetrics) -> f64) {
        let width = self
            .covers
            .iter()
            .chain(&self.secrets)
            .map(|s| s.len())
            .max()
            .unwrap_or(0)
            .max(8);
        writeln!(out, "{title}").unwrap();
        write!(out, "{:<width$}", "cover").unwrap();
        for s in &self.secrets {
            write!(out, "  {s:>width$}").unwrap();
        }
        out.push('\n');
        for (ci, c) in self.covers.iter().enumerate() {
            write!(out, "{c:<width$}").unwrap();
            for si in 0..self.secrets.len() {
                let v = match &self.cell(ci, si).outcome {
                    Ok(m) => format_psnr(pick(m)),
                    Err(_) => "error".to_string(),
                };
                write!(out, "  {v:>width$}").unwrap();
            }
            out.push('\n');
        }
        out.push('\n');
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.table(&mut out, "Stego PSNR, RGB preview vs cover (dB)", |m| {
            m.stego_psnr_rgb
        });
        self.table(&mut out, "Stego PSNR, Cr plane vs cover Cr (dB)", |m| {
            m.stego_psnr_cr
        });
        self.table(&mut out, "Extracted secret PSNR (dB)", |m| m.secret_psnr);
        let ok = self
            .cells
            .iter()
            .filter(|c| matches!(&c.outcome, Ok(m) if m.key_recovered))
            .count();
        writeln!(out, "key recovered: {ok}/{}", self.cells.len()).unwrap();
        for c in &self.cells {
            if let Err(e) = &c.outcome {
                writeln!(out, "failed {} / {}: {e}", c.cover, c.secret).unwrap();
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "cover,secret,stego_psnr_rgb,stego_psnr_cr,secret_psnr,key_recovered,error\n",
        );
        for c in &self.cells {
            match &c.outcome {
                Ok(m) => writeln!(
                    out,
                    "{},{},{},{},{},{},",
                    c.cover,
                    c.secret,
                    format_psnr(m.stego_psnr_rgb),
                    format_psnr(m.stego_psnr_cr),
                    format_psnr(m.secret_psnr),
                    m.key_recovered
                ),
                Err(e) => writeln!(
                    out,
                    "{},{},,,,false,\"{}\"",
                    c.cover,
                    c.secret,
                    e.replace('"', "'")
                ),
            }
            .unwrap();
        }
        out
    }
}
