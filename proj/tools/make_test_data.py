#!/usr/bin/env python3
# Copyright 2026 The softlayer Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the photos and synthetic disparity maps under tests/data.

Photos come from scikit-image's bundled samples, downscaled so the longer
side is 256 px. Each disparity map is a receding ground ramp with a raised
elliptical foreground object, which gives the layering stages real depth
edges to work on.
"""

import argparse
import pathlib

import numpy as np
from PIL import Image
from skimage import data

SAMPLES = {"astronaut": data.astronaut, "chelsea": data.chelsea, "coffee": data.coffee}


def write_pfm(path, values):
    h, w = values.shape
    with open(path, "wb") as f:
        f.write(b"Pf\n%d %d\n-1.0\n" % (w, h))
        f.write(np.flipud(values).astype("<f4").tobytes())


def synthetic_disparity(w, h, seed):
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:h, 0:w].astype(np.float64)
    ground = 0.1 + 0.3 * y / (h - 1)
    cx, cy = rng.uniform(0.35, 0.65) * w, rng.uniform(0.4, 0.6) * h
    rx, ry = rng.uniform(0.15, 0.25) * w, rng.uniform(0.2, 0.3) * h
    inside = ((x - cx) / rx) ** 2 + ((y - cy) / ry) ** 2 <= 1.0
    bump = 0.05 * np.cos(np.pi * (x - cx) / (2 * rx)).clip(0)
    d = np.where(inside, 0.8 + bump, ground)
    return d.astype(np.float32)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=pathlib.Path(__file__).parent.parent / "tests" / "data",
                        type=pathlib.Path)
    parser.add_argument("--size", type=int, default=256)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for seed, (name, loader) in enumerate(SAMPLES.items()):
        img = Image.fromarray(loader())
        scale = args.size / max(img.size)
        img = img.resize((round(img.width * scale), round(img.height * scale)),
                         Image.LANCZOS)
        img.save(args.out / f"{name}.png")
        write_pfm(args.out / f"{name}_disp.pfm",
                  synthetic_disparity(img.width, img.height, seed))


if __name__ == "__main__":
    main()
