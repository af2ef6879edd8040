#!/usr/bin/env python3
"""Convert IDX image files (the MNIST family layout) to point-cloud CSV.

Each image becomes one CSV row of flattened raw pixel values in [0, 255];
no normalization is applied.  Gzipped files are handled transparently.
Dataset files must already be on disk; nothing is downloaded.

Usage:
    python scripts/convert_idx_to_csv.py train-images-idx3-ubyte.gz out.csv [--limit N] [--seed S]

With --limit, a seeded random subset of N images is written instead of the
full file.
"""

import argparse
import gzip
import struct
import sys

import numpy as np

IDX_UNSIGNED_BYTE_IMAGES = 0x00000803


def read_idx_images(path):
    """Read an IDX3 unsigned-byte image file into an (n, rows*cols) array."""
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rb") as fh:
        magic, count, rows, cols = struct.unpack(">IIII", fh.read(16))
        if magic != IDX_UNSIGNED_BYTE_IMAGES:
            raise ValueError(f"{path}: unexpected IDX magic 0x{magic:08x}")
        data = fh.read(count * rows * cols)
    images = np.frombuffer(data, dtype=np.uint8)
    if images.size != count * rows * cols:
        raise ValueError(f"{path}: truncated image data")
    return images.reshape(count, rows * cols)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("idx_path", help="IDX3 image file, optionally .gz")
    parser.add_argument("out_csv", help="destination CSV path")
    parser.add_argument("--limit", type=int, default=None,
                        help="write a random subset of this many images")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    images = read_idx_images(args.idx_path)
    if args.limit is not None:
        idx = np.random.default_rng(args.seed).choice(
            len(images), size=min(args.limit, len(images)), replace=False
        )
        images = images[idx]
    with open(args.out_csv, "w", encoding="utf-8") as fh:
        fh.write(",".join(f"x{i}" for i in range(images.shape[1])) + "\n")
        for row in images:
            fh.write(",".join(str(int(v)) for v in row) + "\n")
    print(f"wrote {images.shape[0]} images x {images.shape[1]} pixels to {args.out_csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
