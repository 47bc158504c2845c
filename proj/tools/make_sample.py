"""Regenerates data/sample_illustration_64.png, the bundled pipeline sample.

The committed PNG is the source of truth for golden checksums; rerun only when
the sample is deliberately changed.
"""
import math
import sys

from PIL import Image


def clamp(v):
    return max(0, min(255, int(round(v))))


def main(path):
    w = h = 64
    img = Image.new("RGB", (w, h))
    px = img.load()
    for y in range(h):
        for x in range(w):
            # Sky gradient background.
            r, g, b = 170 + y * 0.8, 200 + y * 0.5, 245
            # Gray floor band (achromatic).
            if y >= 54:
                shade = 150 - (x % 16) * 2
                r = g = b = shade
            # Red shirt with left-to-right shading.
            if 40 <= y < 54 and abs(x - 32) <= 8 + (y - 40):
                k = 1.0 - 0.35 * (x / w)
                r, g, b = 220 * k, 40 * k, 50 * k
            # Face with radial shading.
            d = math.hypot(x - 32, y - 24)
            if d <= 14:
                k = 1.0 - 0.3 * (d / 14) ** 2
                r, g, b = 250 * k, 215 * k, 180 * k
            # Hair cap.
            if d <= 15 and y < 18:
                r, g, b = 90, 50, 30
            # Ink outlines.
            if 14 <= d <= 15.2 and y >= 18:
                r = g = b = 20
            px[x, y] = (clamp(r), clamp(g), clamp(b))
    img.save(path)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/sample_illustration_64.png")
