use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use dwtstego::bench::{run_bench, BenchConfig, ReportFormat};
use dwtstego::color::{rgb_to_ycbcr, ycbcr_to_rgb};
use dwtstego::engine::{embed_detailed, extract, EmbedOptions, StegoArtifact};
use dwtstego::io::{
    is_canonical_stego_path, load_any, load_gray, load_rgb, load_ycc, save_gray, save_rgb,
    save_ycc, AnyImage, YCC_SUFFIX,
};
use dwtstego::metrics::{QualityReport, L_MAX_8BIT};
use dwtstego::{CipherKey, Dims};

const KEY_ENV: &str = "DWTSTEGO_KEY";

#[derive(Parser)]
#[command(
    name = "dwtstego",
    version,
    about = "Hide a grayscale image in a color image as a wavelet block-match key"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a secret into a cover; writes `<out>.ycc.png` and an RGB preview.
    Embed {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        secret: PathBuf,
        /// Cipher key as hex.
        #[arg(long, env = KEY_ENV, hide_env_values = true)]
        key: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Regenerate the secret from a canonical `.ycc` stego file.
    Extract {
        #[arg(long)]
        stego: PathBuf,
        #[arg(long, env = KEY_ENV, hide_env_values = true)]
        key: String,
        #[arg(long)]
        out: PathBuf,
        /// Secret size as HxW, overriding the size stored in the stego image.
        #[arg(long, value_parser = parse_dims)]
        dims: Option<Dims>,
        /// Original secret; prints PSNR of the regenerated one against it.
        #[arg(long)]
        original: Option<PathBuf>,
    },
    /// Run every cover x secret pair listed in a config file.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print MSE and PSNR between two images.
    Psnr { a: PathBuf, b: PathBuf },
}

fn parse_dims(s: &str) -> Result<Dims, String> {
    let (h, w) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected HxW, got `{s}`"))?;
    let h = h.trim().parse().map_err(|e| format!("height: {e}"))?;
    let w = w.trim().parse().map_err(|e| format!("width: {e}"))?;
    Ok(Dims::new(w, h))
}

fn parse_key(hex_key: &str) -> Result<CipherKey> {
    let bytes = hex::decode(hex_key.trim()).context("cipher key must be hex")?;
    if bytes.is_empty() {
        bail!("cipher key must not be empty");
    }
    Ok(CipherKey::new(bytes)?)
}

/// `(canonical, preview)` file names for an `--out` argument.
fn stego_paths(out: &Path) -> (PathBuf, PathBuf) {
    let ext = out
        .extension()
        .map(|e| e.to_string_lossy().into_owned())
        .unwrap_or_else(|| "png".into());
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    match stem.strip_suffix(YCC_SUFFIX) {
        Some(base) => (
            out.to_path_buf(),
            out.with_file_name(format!("{base}.{ext}")),
        ),
        None => (
            out.with_file_name(format!("{stem}{YCC_SUFFIX}.{ext}")),
            out.to_path_buf(),
        ),
    }
}

fn cmd_embed(cover: &Path, secret: &Path, key: &str, out: &Path) -> Result<()> {
    let opts = EmbedOptions::new(parse_key(key)?);
    let cover_img = load_rgb(cover)?;
    let secret_img = load_gray(secret)?;
    let outcome = embed_detailed(&cover_img, &secret_img, &opts)?;
    let (canonical, preview_path) = stego_paths(out);
    let preview = ycbcr_to_rgb(&outcome.artifact.image);
    save_ycc(&outcome.artifact.image, &canonical)?;
    save_rgb(&preview, &preview_path)?;

    let rgb = QualityReport::measure(&cover_img, &preview, L_MAX_8BIT)?;
    let cr = QualityReport::measure(
        &rgb_to_ycbcr(&cover_img).cr,
        &outcome.artifact.image.cr,
        L_MAX_8BIT,
    )?;
    println!("stego:   {}", canonical.display());
    println!("preview: {}", preview_path.display());
    println!(
        "payload: {} of {} bits ({} key entries, rle {})",
        outcome.stream_bits,
        outcome.capacity_bits,
        outcome.key.n_s(),
        if outcome.payload.header.rle_applied() {
            "on"
        } else {
            "off"
        }
    );
    println!("stego vs cover (RGB preview): {rgb}");
    println!("stego vs cover (Cr plane):    {cr}");
    Ok(())
}

fn cmd_extract(
    stego: &Path,
    key: &str,
    out: &Path,
    dims: Option<Dims>,
    original: Option<&Path>,
) -> Result<()> {
    let opts = EmbedOptions::new(parse_key(key)?);
    let image = if is_canonical_stego_path(stego) {
        load_ycc(stego)?
    } else {
        eprintln!(
            "warning: {} is not a canonical {YCC_SUFFIX} stego file; best-effort extraction; recovery not guaranteed",
            stego.display()
        );
        rgb_to_ycbcr(&load_rgb(stego)?)
    };
    let artifact = StegoArtifact::from_image(image)?;
    let secret = extract(&artifact, &opts, dims)?;
    save_gray(&secret, out)?;
    println!(
        "secret:  {} ({})",
        out.display(),
        Dims::new(secret.width(), secret.height())
    );
    if let Some(orig) = original {
        let reference = load_gray(orig)?;
        println!(
            "secret vs original: {}",
            QualityReport::measure(&reference, &secret, L_MAX_8BIT)?
        );
    }
    Ok(())
}

/// Returns whether every pair succeeded.
fn cmd_bench(config_path: &Path) -> Result<bool> {
    let config = BenchConfig::load(config_path)?;
    let report = run_bench(&config)?;
    let text = report.render(config.report_format);
    print!("{text}");
    if let Some(dir) = &config.output_dir {
        let name = match config.report_format {
            ReportFormat::Text => "report.txt",
            ReportFormat::Csv => "report.csv",
        };
        std::fs::write(dir.join(name), &text)
            .with_context(|| format!("writing report to {}", dir.display()))?;
    }
    Ok(report.cells.iter().all(|c| c.outcome.is_ok()))
}

fn cmd_psnr(a: &Path, b: &Path) -> Result<()> {
    let report = match (load_any(a)?, load_any(b)?) {
        (AnyImage::Rgb(x), AnyImage::Rgb(y)) => QualityReport::measure(&x, &y, L_MAX_8BIT)?,
        (AnyImage::Gray(x), AnyImage::Gray(y)) => QualityReport::measure(&x, &y, L_MAX_8BIT)?,
        _ => bail!("cannot compare a gray image with a color image"),
    };
    println!("{report}");
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Embed {
            cover,
            secret,
            key,
            out,
        } => cmd_embed(&cover, &secret, &key, &out).map(|_| true),
        Command::Extract {
            stego,
            key,
            out,
            dims,
            original,
        } => cmd_extract(&stego, &key, &out, dims, original.as_deref()).map(|_| true),
        Command::Bench { config } => cmd_bench(&config),
        Command::Psnr { a, b } => cmd_psnr(&a, &b).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_error = e.use_stderr();
            let _ = e.print();
            return if usage_error {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
