"""Shared test helpers: independent brute-force oracles and random input
generators.

The oracles here deliberately avoid the library's vectorized kernels:
morphology is checked against literal per-pixel Python loops over
nested lists, Otsu against an exhaustive threshold search, and the
synthetic geometry against direct pixel enumeration.
"""

from __future__ import annotations

import numpy as np

from tileguard import Image, StructuringElement


# ---------------------------------------------------------------- oracles


def dilate_oracle(img: Image, se: StructuringElement) -> np.ndarray:
    """Per-pixel window maximum; out-of-bounds reads are 0.0."""
    pixels = img.pixels.tolist()
    h, w = img.height, img.width
    offsets = _offsets(se)
    out = [[0.0] * w for _ in range(h)]
    for i in range(h):
        row = out[i]
        for j in range(w):
            best = None
            for dr, dc in offsets:
                r = i + dr
                c = j + dc
                v = pixels[r][c] if 0 <= r < h and 0 <= c < w else 0.0
                if best is None or v > best:
                    best = v
            row[j] = best
    return np.array(out)


def erode_oracle(img: Image, se: StructuringElement) -> np.ndarray:
    """Per-pixel window minimum; out-of-bounds reads are 1.0."""
    pixels = img.pixels.tolist()
    h, w = img.height, img.width
    offsets = _offsets(se)
    out = [[1.0] * w for _ in range(h)]
    for i in range(h):
        row = out[i]
        for j in range(w):
            best = None
            for dr, dc in offsets:
                r = i + dr
                c = j + dc
                v = pixels[r][c] if 0 <= r < h and 0 <= c < w else 1.0
                if best is None or v < best:
                    best = v
            row[j] = best
    return np.array(out)


def _offsets(se: StructuringElement) -> list[tuple[int, int]]:
    orow, ocol = se.origin
    return [
        (r - orow, c - ocol)
        for r, mask_row in enumerate(se.mask.tolist())
        for c, on in enumerate(mask_row)
        if on
    ]


def otsu_partition_oracle(img: Image) -> np.ndarray | None:
    """Foreground mask from an exhaustive search over all 256 candidate
    thresholds (k + 0.5)/255, maximizing between-class variance computed
    directly on the raw intensities.  None when no split separates."""
    values = img.pixels.ravel()
    n = values.size
    best_sigma = 0.0
    best_mask = None
    for k in range(256):
        t = (k + 0.5) / 255.0
        fg = values >= t
        n1 = int(fg.sum())
        n0 = n - n1
        if n0 == 0 or n1 == 0:
            continue
        mu0 = float(values[~fg].mean())
        mu1 = float(values[fg].mean())
        sigma = (n0 / n) * (n1 / n) * (mu0 - mu1) ** 2
        if sigma > best_sigma:
            best_sigma = sigma
            best_mask = fg.reshape(img.shape)
    return best_mask


def grid_line_count_oracle(height: int, width: int, spacing: int) -> int:
    """Direct enumeration of grid-line cells (row or column index
    divisible by the spacing)."""
    return sum(
        1
        for r in range(height)
        for c in range(width)
        if r % spacing == 0 or c % spacing == 0
    )


def disk_pixels_oracle(
    height: int, width: int, center: tuple[float, float], radius: float
) -> set[tuple[int, int]]:
    """Direct enumeration of pixels whose center lies within the disk."""
    cr, cc = center
    return {
        (r, c)
        for r in range(height)
        for c in range(width)
        if (r - cr) ** 2 + (c - cc) ** 2 <= radius * radius
    }


# ----------------------------------------------------------- generators


def random_gray(rng: np.random.RandomState, height: int, width: int) -> Image:
    return Image(rng.rand(height, width))


def random_binary(rng: np.random.RandomState, height: int, width: int) -> Image:
    return Image((rng.rand(height, width) < 0.5).astype(np.float64))


def random_quantized(rng: np.random.RandomState, height: int, width: int) -> Image:
    """Random image with intensities on the k/255 grid (8-bit levels)."""
    return Image(rng.randint(0, 256, size=(height, width)) / 255.0)


def random_se(rng: np.random.RandomState, max_size: int = 7) -> StructuringElement:
    """Arbitrary mask and origin; the origin cell need not be true."""
    kh = rng.randint(1, max_size + 1)
    kw = rng.randint(1, max_size + 1)
    mask = rng.rand(kh, kw) < 0.5
    if not mask.any():
        mask[rng.randint(kh), rng.randint(kw)] = True
    return StructuringElement(mask, (rng.randint(kh), rng.randint(kw)))


def random_symmetric_se(rng: np.random.RandomState, max_size: int = 7) -> StructuringElement:
    """Odd-sized mask, 180-degree symmetric about its center, center true.

    These are the elements the smoothing pipelines accept (origin set)
    and for which reflection is a no-op.
    """
    sizes = [s for s in (1, 3, 5, 7) if s <= max_size]
    kh = int(rng.choice(sizes))
    kw = int(rng.choice(sizes))
    mask = rng.rand(kh, kw) < 0.4
    mask |= mask[::-1, ::-1]
    mask[kh // 2, kw // 2] = True
    return StructuringElement(mask, (kh // 2, kw // 2))
