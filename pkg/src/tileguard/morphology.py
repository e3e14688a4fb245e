"""Flat structuring elements and the fundamental morphological operators.

Dilation and erosion are neighborhood maximum/minimum filters: the
output at pixel ``p`` aggregates input values at ``p + s - origin`` for
every true cell ``s`` of the structuring element.  Reads that fall
outside the image use the neutral padding value of the aggregation
(0.0 for max, 1.0 for min), so image borders neither grow nor erode
artificially.  One kernel serves binary and grayscale images alike.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import Image

__all__ = [
    "StructuringElement",
    "dilate",
    "erode",
    "opening",
    "closing",
]


@dataclass(frozen=True, eq=False)
class StructuringElement:
    """Boolean probe mask with a designated origin cell.

    Parameters
    ----------
    mask : array_like of bool
        2D neighborhood shape; at least one cell must be true.
    origin : (int, int)
        (row, col) index into the mask that is aligned with the output
        pixel.  Must lie within the mask bounds.  The origin cell does
        not have to be true, but extensivity of dilation (and
        anti-extensivity of erosion) is only guaranteed when it is;
        the smoothing pipelines require it.
    """

    mask: np.ndarray
    origin: tuple[int, int]

    def __post_init__(self) -> None:
        arr = np.array(self.mask, dtype=bool, copy=True)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("structuring element mask must be a non-empty 2D grid")
        if not arr.any():
            raise ValueError("structuring element must have at least one true cell")
        r, c = self.origin
        if not (0 <= r < arr.shape[0] and 0 <= c < arr.shape[1]):
            raise ValueError(f"origin {self.origin} outside mask bounds {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "mask", arr)
        object.__setattr__(self, "origin", (int(r), int(c)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.mask.shape

    @property
    def origin_included(self) -> bool:
        """True if the origin cell itself is part of the neighborhood."""
        return bool(self.mask[self.origin])

    def reflect(self) -> "StructuringElement":
        """Mask flipped through its origin (offset set negated)."""
        h, w = self.mask.shape
        r, c = self.origin
        return StructuringElement(self.mask[::-1, ::-1], (h - 1 - r, w - 1 - c))

    @classmethod
    def square(cls, size: int) -> "StructuringElement":
        """Solid size x size square, center origin.  Size must be odd."""
        _require_odd(size, "square")
        return cls(np.ones((size, size), dtype=bool), (size // 2, size // 2))

    @classmethod
    def cross(cls, size: int) -> "StructuringElement":
        """Plus-shaped element spanning size x size, center origin.  Size must be odd."""
        _require_odd(size, "cross")
        mask = np.zeros((size, size), dtype=bool)
        mask[size // 2, :] = True
        mask[:, size // 2] = True
        return cls(mask, (size // 2, size // 2))

    @classmethod
    def disk(cls, radius: int) -> "StructuringElement":
        """Discrete disk of the given radius: cells with r^2 + c^2 <= radius^2."""
        if radius < 0:
            raise ValueError(f"disk radius must be >= 0, got {radius}")
        y, x = np.ogrid[-radius : radius + 1, -radius : radius + 1]
        return cls(x * x + y * y <= radius * radius, (radius, radius))

    @classmethod
    def parse(cls, descriptor: str) -> "StructuringElement":
        """Parse ``"square:K"``, ``"cross:K"`` (K odd) or ``"disk:R"``."""
        shape, sep, arg = descriptor.partition(":")
        if not sep:
            raise ValueError(f"bad structuring element descriptor {descriptor!r}; expected SHAPE:N")
        try:
            n = int(arg)
        except ValueError:
            raise ValueError(f"bad structuring element size in {descriptor!r}") from None
        if shape == "square":
            return cls.square(n)
        if shape == "cross":
            return cls.cross(n)
        if shape == "disk":
            return cls.disk(n)
        raise ValueError(f"unknown structuring element shape {shape!r}; expected square, cross or disk")

    def __repr__(self) -> str:
        h, w = self.mask.shape
        return f"StructuringElement({h}x{w}, origin={self.origin})"


def _require_odd(size: int, shape: str) -> None:
    if size < 1 or size % 2 == 0:
        raise ValueError(f"{shape} structuring element size must be odd and >= 1, got {size}")


def _window_reduce(img: Image, se: StructuringElement, pad_value: float, reducer) -> Image:
    """Fold ``reducer`` over the image shifted by every true SE offset.

    The input is padded with ``pad_value`` by exactly the SE extents so
    each true cell (r, c) corresponds to the padded slice starting at
    (r, c); the reduction over those slices realizes the window rule.
    """
    a = img.pixels
    h, w = a.shape
    or_, oc = se.origin
    mh, mw = se.mask.shape
    padded = np.pad(
        a,
        ((or_, mh - 1 - or_), (oc, mw - 1 - oc)),
        mode="constant",
        constant_values=pad_value,
    )
    rows, cols = np.nonzero(se.mask)
    out = padded[rows[0] : rows[0] + h, cols[0] : cols[0] + w].copy()
    for r, c in zip(rows[1:], cols[1:]):
        reducer(out, padded[r : r + h, c : c + w], out=out)
    return Image(out)


def dilate(img: Image, se: StructuringElement) -> Image:
    """Neighborhood maximum under the structuring element.

    ``out(p) = max over true cells s of in(p + s - origin)``, reading
    0.0 outside the image.  On binary images this is the hit rule:
    a pixel becomes foreground when any SE cell covers foreground.
    """
    return _window_reduce(img, se, 0.0, np.maximum)


def erode(img: Image, se: StructuringElement) -> Image:
    """Neighborhood minimum under the structuring element.

    ``out(p) = min over true cells s of in(p + s - origin)``, reading
    1.0 outside the image so borders do not erode artificially.  On
    binary images this is the fit rule: a pixel stays foreground only
    when every SE cell covers foreground.
    """
    return _window_reduce(img, se, 1.0, np.minimum)


def opening(img: Image, se: StructuringElement) -> Image:
    """Erosion followed by dilation; removes protrusions smaller than the SE."""
    return dilate(erode(img, se), se)


def closing(img: Image, se: StructuringElement) -> Image:
    """Dilation followed by erosion; fills holes and gaps smaller than the SE."""
    return erode(dilate(img, se), se)
