use std::path::Path;
use std::process::{Command, Output};

use dwtstego::io::{load_gray, load_rgb, save_gray, save_rgb};
use dwtstego::{GrayImage, Plane, RgbImage};

const KEY: &str = "a1b2c3d4";

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dwtstego"));
    cmd.env_remove("DWTSTEGO_KEY");
    cmd
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = cmd.output().expect("spawn dwtstego");
    (
        status.code().unwrap_or(-1),
        String::from_utf8_lossy(&stdout).into_owned(),
        String::from_utf8_lossy(&stderr).into_owned(),
    )
}

fn cover(n: usize) -> RgbImage {
    RgbImage::from_fn(n, n, |r, c| {
        [
            (40 + (r * 150) / n) as u8,
            (60 + (c * 120) / n) as u8,
            ((r * 5 + c * 9) % 200 + 20) as u8,
        ]
    })
}

fn secret(n: usize) -> GrayImage {
    GrayImage::new(Plane::from_fn(n, n, |r, c| ((r * 13 + c * 7) % 256) as u8))
}

fn write_inputs(dir: &Path, cover_n: usize, secret_n: usize) {
    save_rgb(&cover(cover_n), dir.join("cover.png")).unwrap();
    save_gray(&secret(secret_n), dir.join("secret.png")).unwrap();
}

fn embed(dir: &Path) -> (i32, String, String) {
    run(bin()
        .current_dir(dir)
        .args([
            "embed",
            "--cover",
            "cover.png",
            "--secret",
            "secret.png",
            "--key",
            KEY,
        ])
        .args(["--out", "stego.png"]))
}

#[test]
fn embed_then_extract() {
    let dir = tempfile::tempdir().unwrap();
    write_inputs(dir.path(), 64, 32);
    let (code, out, err) = embed(dir.path());
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("stego vs cover (RGB preview): MSE"), "{out}");
    assert!(dir.path().join("stego.ycc.png").exists());
    assert!(dir.path().join("stego.png").exists());
    load_rgb(dir.path().join("stego.png")).unwrap();

    let (code, out, err) = run(bin()
        .current_dir(dir.path())
        .args([
            "extract",
            "--stego",
            "stego.ycc.png",
            "--key",
            KEY,
            "--out",
            "s.png",
        ])
        .args(["--original", "secret.png"]));
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("secret vs original: MSE"), "{out}");
    assert!(err.is_empty(), "{err}");

    let image = dwtstego::io::load_ycc(dir.path().join("stego.ycc.png")).unwrap();
    let art = dwtstego::StegoArtifact::from_image(image).unwrap();
    let opts = dwtstego::EmbedOptions::new(dwtstego::CipherKey::new(hex_bytes()).unwrap());
    let expected = dwtstego::extract(&art, &opts, None).unwrap();
    assert_eq!(load_gray(dir.path().join("s.png")).unwrap(), expected);
}

fn hex_bytes() -> Vec<u8> {
    vec![0xa1, 0xb2, 0xc3, 0xd4]
}

#[test]
fn key_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    write_inputs(dir.path(), 32, 16);
    let (code, _, err) = run(bin()
        .current_dir(dir.path())
        .env("DWTSTEGO_KEY", KEY)
        .args([
            "embed",
            "--cover",
            "cover.png",
            "--secret",
            "secret.png",
            "--out",
            "x.ycc.png",
        ]));
    assert_eq!(code, 0, "{err}");
    assert!(dir.path().join("x.png").exists());
    let (code, _, err) = run(bin()
        .current_dir(dir.path())
        .env("DWTSTEGO_KEY", "ffff")
        .args([
            "extract",
            "--stego",
            "x.ycc.png",
            "--key",
            KEY,
            "--out",
            "s.png",
        ]));
    assert_eq!(code, 0, "flag must win over env: {err}");
}

#[test]
fn capacity_exceeded() {
    let dir = tempfile::tempdir().unwrap();
    write_inputs(dir.path(), 16, 64);
    let (code, _, err) = embed(dir.path());
    assert_eq!(code, 2);
    assert!(err.contains("key too large for cover"), "{err}");
}

#[test]
fn missing_input() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = embed(dir.path());
    assert_eq!(code, 2);
    assert!(err.contains("cover.png"), "{err}");
}

#[test]
fn wrong_key_is_a_decode_error() {
    // 48x48 cover: 144 cover blocks, 8-bit addresses, so garbage entries fall out of range.
    let dir = tempfile::tempdir().unwrap();
    write_inputs(dir.path(), 48, 16);
    assert_eq!(embed(dir.path()).0, 0);
    let (code, _, err) = run(bin().current_dir(dir.path()).args([
        "extract",
        "--stego",
        "stego.ycc.png",
        "--key",
        "0f0e0d",
        "--out",
        "s.png",
    ]));
    assert_eq!(code, 2);
    assert!(err.contains("address out of range"), "{err}");
}

#[test]
fn preview_extraction_warns() {
    let dir = tempfile::tempdir().unwrap();
    write_inputs(dir.path(), 64, 32);
    assert_eq!(embed(dir.path()).0, 0);
    let (_, _, err) = run(bin().current_dir(dir.path()).args([
        "extract",
        "--stego",
        "stego.png",
        "--key",
        KEY,
        "--out",
        "s.png",
    ]));
    assert!(
        err.contains("best-effort extraction; recovery not guaranteed"),
        "{err}"
    );
}

#[test]
fn dims_override() {
    let dir = tempfile::tempdir().unwrap();
    write_inputs(dir.path(), 64, 32);
    assert_eq!(embed(dir.path()).0, 0);
    // 16x64 holds the same 64 secret blocks as 32x32.
    let (code, _, err) = run(bin()
        .current_dir(dir.path())
        .args([
            "extract",
            "--stego",
            "stego.ycc.png",
            "--key",
            KEY,
            "--out",
            "s.png",
        ])
        .args(["--dims", "16x64"]));
    assert_eq!(code, 0, "{err}");
    let s = load_gray(dir.path().join("s.png")).unwrap();
    assert_eq!((s.height(), s.width()), (16, 64));

    let (code, _, _) = run(bin()
        .current_dir(dir.path())
        .args([
            "extract",
            "--stego",
            "stego.ycc.png",
            "--key",
            KEY,
            "--out",
            "s.png",
        ])
        .args(["--dims", "64x64"]));
    assert_eq!(code, 2);
}

#[test]
fn bench_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    save_rgb(&cover(64), dir.path().join("c1.png")).unwrap();
    save_rgb(
        &RgbImage::from_fn(64, 64, |r, c| [(r * 3) as u8, 128, (c * 2) as u8]),
        dir.path().join("c2.png"),
    )
    .unwrap();
    save_gray(&secret(32), dir.path().join("s1.png")).unwrap();
    std::fs::write(
        dir.path().join("bench.conf"),
        "cover = c1.png\ncover = c2.png\nsecret = s1.png\nsecret = missing.png\nkey = 01\noutput_dir = out\nformat = csv\n",
    )
    .unwrap();
    let first = run(bin()
        .args(["bench", "--config"])
        .arg(dir.path().join("bench.conf")));
    let second = run(bin()
        .args(["bench", "--config"])
        .arg(dir.path().join("bench.conf")));
    assert_eq!(first.1, second.1);
    // the missing secret fails its cells without stopping the run
    assert_eq!(first.0, 2);
    let lines: Vec<&str> = first.1.lines().collect();
    assert_eq!(lines.len(), 5, "{}", first.1);
    assert!(
        lines[1].starts_with("c1,s1,") && lines[1].ends_with(",true,"),
        "{}",
        lines[1]
    );
    assert!(lines[2].starts_with("c1,missing,"));
    assert!(lines[3].starts_with("c2,s1,") && lines[3].ends_with(",true,"));
    assert!(dir.path().join("out/report.csv").exists());
    assert!(dir.path().join("out/c1__s1.ycc.png").exists());
    assert!(dir.path().join("out/c1__s1.secret.png").exists());
}

#[test]
fn bench_without_covers_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("b.conf"), "secret = s.png\nkey = 01\n").unwrap();
    let (code, _, err) = run(bin()
        .args(["bench", "--config"])
        .arg(dir.path().join("b.conf")));
    assert_eq!(code, 2);
    assert!(err.contains("no cover images"), "{err}");
}

#[test]
fn psnr_command() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pgm");
    let b = dir.path().join("b.pgm");
    save_gray(&GrayImage::new(Plane::new(2, 1, vec![0, 0]).unwrap()), &a).unwrap();
    save_gray(&GrayImage::new(Plane::new(2, 1, vec![0, 16]).unwrap()), &b).unwrap();

    let (code, out, _) = run(bin().arg("psnr").arg(&a).arg(&a));
    assert_eq!(code, 0);
    assert!(out.contains("PSNR inf dB"), "{out}");

    let (code, out, _) = run(bin().arg("psnr").arg(&a).arg(&b));
    assert_eq!(code, 0);
    assert!(out.contains("MSE 128.000000  PSNR 27.06 dB"), "{out}");

    let c = dir.path().join("c.pgm");
    save_gray(&GrayImage::new(Plane::filled(4, 4, 0)), &c).unwrap();
    let (code, _, err) = run(bin().arg("psnr").arg(&a).arg(&c));
    assert_eq!(code, 2);
    assert!(err.contains("dimension mismatch"), "{err}");
}

#[test]
fn usage_errors_exit_1() {
    let (code, _, _) = run(bin().args(["embed", "--cover", "x.png"]));
    assert_eq!(code, 1);
    let (code, _, _) = run(bin().arg("frobnicate"));
    assert_eq!(code, 1);
    let (code, out, _) = run(bin().arg("--help"));
    assert_eq!(code, 0);
    assert!(out.contains("embed"));
}
