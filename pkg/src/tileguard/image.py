"""Grayscale image values and intensity-domain operations.

Images are immutable rectangular grids of float intensities on the
[0, 1] scale.  Binary images are the special case where every pixel is
exactly 0.0 (background) or 1.0 (foreground).  All arithmetic here is
defined so that, restricted to binary images, it coincides with set
algebra: ``subtract`` is set difference, ``add`` is set union.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Image",
    "Threshold",
    "binarize",
    "otsu_threshold",
    "subtract",
    "add",
    "complement",
    "pixel_count",
]


@dataclass(frozen=True, eq=False)
class Image:
    """Immutable 2D grayscale image with intensities in [0, 1].

    Parameters
    ----------
    pixels : array_like
        2D array of intensities.  Copied and frozen on construction.

    Raises
    ------
    ValueError
        If the array is not 2D, is empty, contains non-finite values,
        or has any value outside [0, 1].
    """

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.pixels, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise ValueError(f"image must be 2D, got {arr.ndim}D")
        if arr.size == 0:
            raise ValueError("image must have at least one pixel")
        if not np.all(np.isfinite(arr)):
            raise ValueError("image intensities must be finite")
        lo, hi = float(arr.min()), float(arr.max())
        if lo < 0.0 or hi > 1.0:
            raise ValueError(f"intensities must lie in [0, 1], got [{lo}, {hi}]")
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    @property
    def is_binary(self) -> bool:
        """True if every pixel is exactly 0.0 or 1.0."""
        p = self.pixels
        return bool(np.all((p == 0.0) | (p == 1.0)))

    @classmethod
    def constant(cls, height: int, width: int, value: float) -> "Image":
        """Uniform image of the given size and intensity."""
        return cls(np.full((height, width), float(value)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Image({self.height}x{self.width})"


@dataclass(frozen=True)
class Threshold:
    """Binarization rule: automatic (Otsu) or a fixed cut in [0, 1]."""

    mode: str = "otsu"
    value: float = 0.5

    def __post_init__(self) -> None:
        if self.mode not in ("otsu", "fixed"):
            raise ValueError(f"threshold mode must be 'otsu' or 'fixed', got {self.mode!r}")
        if not (0.0 <= self.value <= 1.0):
            raise ValueError(f"fixed threshold must lie in [0, 1], got {self.value}")

    @classmethod
    def otsu(cls) -> "Threshold":
        return cls(mode="otsu")

    @classmethod
    def fixed(cls, value: float) -> "Threshold":
        return cls(mode="fixed", value=value)

    @classmethod
    def parse(cls, descriptor: str) -> "Threshold":
        """Parse ``"otsu"`` or ``"fixed:V"`` with V in [0, 1]."""
        if descriptor == "otsu":
            return cls.otsu()
        if descriptor.startswith("fixed:"):
            try:
                value = float(descriptor.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad fixed threshold value in {descriptor!r}") from None
            return cls.fixed(value)
        raise ValueError(f"unknown threshold descriptor {descriptor!r}; expected 'otsu' or 'fixed:V'")

    def __str__(self) -> str:
        return "otsu" if self.mode == "otsu" else f"fixed:{self.value:g}"


def _quantize_255(values: np.ndarray) -> np.ndarray:
    # Round half up so bin k covers exactly the intensities v >= (k - 0.5)/255.
    return np.floor(values * 255.0 + 0.5).astype(np.intp)


def otsu_threshold(img: Image) -> float:
    """Maximum between-class-variance threshold over a 256-bin histogram.

    Returns the smallest intensity ``t`` such that the partition
    ``v >= t`` maximizes between-class variance among all 256 bin
    splits.  When every split has zero variance (all intensity mass in
    one bin) there is no foreground/background separation; returns
    ``inf`` so that thresholding yields an all-background image.

    Parameters
    ----------
    img : Image
        Input image; the histogram bins intensities as round(v * 255).

    Returns
    -------
    float
        Effective threshold, or ``inf`` for a degenerate histogram.
    """
    counts = np.bincount(_quantize_255(img.pixels.ravel()), minlength=256).astype(np.float64)
    levels = np.arange(256, dtype=np.float64)
    total = counts.sum()
    # weight and mean of the background class for each split k (bins <= k)
    w0 = np.cumsum(counts)
    sum0 = np.cumsum(levels * counts)
    w1 = total - w0
    sum_all = sum0[-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        mu0 = sum0 / w0
        mu1 = (sum_all - sum0) / w1
        sigma_b = w0 * w1 * (mu0 - mu1) ** 2
    sigma_b = np.where((w0 > 0) & (w1 > 0), sigma_b, 0.0)
    best = int(np.argmax(sigma_b))
    if sigma_b[best] <= 0.0:
        return math.inf
    # v >= (k + 0.5)/255 holds exactly when round(v*255) > k
    return (best + 0.5) / 255.0


def binarize(img: Image, threshold: Threshold = Threshold()) -> Image:
    """Threshold an image to binary: 1.0 where intensity >= threshold.

    With ``mode="otsu"`` the effective threshold maximizes between-class
    variance (see :func:`otsu_threshold`); a constant image has no such
    separation and comes back all-background.
    """
    t = threshold.value if threshold.mode == "fixed" else otsu_threshold(img)
    return Image(np.where(img.pixels >= t, 1.0, 0.0))


def _require_same_shape(a: Image, b: Image) -> None:
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.height}x{a.width} vs {b.height}x{b.width}")


def subtract(a: Image, b: Image) -> Image:
    """Pixelwise difference clamped at zero: max(a - b, 0).

    Equals set difference on binary images.  Raises ValueError on a
    dimension mismatch.
    """
    _require_same_shape(a, b)
    return Image(np.maximum(a.pixels - b.pixels, 0.0))


def add(a: Image, b: Image) -> Image:
    """Pixelwise sum saturating at one: min(a + b, 1).

    Equals set union on binary images.  Raises ValueError on a
    dimension mismatch.
    """
    _require_same_shape(a, b)
    return Image(np.minimum(a.pixels + b.pixels, 1.0))


def complement(img: Image) -> Image:
    """Intensity inversion: 1 - v per pixel."""
    return Image(1.0 - img.pixels)


def pixel_count(img: Image) -> int:
    """Number of pixels with strictly positive intensity.

    On binary images this is the foreground cardinality.
    """
    return int(np.count_nonzero(img.pixels > 0.0))
