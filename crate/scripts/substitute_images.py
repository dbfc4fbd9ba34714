"""Write 256x256 RGB covers and 128x128 gray secrets from scikit-image's
bundled sample data, plus a bench config that uses them.

    python3 scripts/substitute_images.py OUT_DIR
"""
import sys
from pathlib import Path

from skimage import data, transform, util
from skimage.io import imsave

COVERS = {"astronaut": data.astronaut, "coffee": data.coffee, "chelsea": data.chelsea}
SECRETS = {"camera": data.camera, "moon": data.moon, "coins": data.coins}


def square(img, size):
    h, w = img.shape[:2]
    s = min(h, w)
    top, left = (h - s) // 2, (w - s) // 2
    crop = img[top:top + s, left:left + s]
    return util.img_as_ubyte(transform.resize(crop, (size, size), anti_aliasing=True))


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    for name, fn in COVERS.items():
        imsave(out / f"{name}.png", square(fn(), 256), check_contrast=False)
    for name, fn in SECRETS.items():
        imsave(out / f"{name}.png", square(fn(), 128), check_contrast=False)
    lines = [f"cover = {n}.png" for n in COVERS] + [f"secret = {n}.png" for n in SECRETS]
    lines += ["key = 5365637265744b6579", "output_dir = out", "format = text"]
    (out / "bench.conf").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "substitutes")
