"""The four residual-based defect detection methods.

Each method turns a tile image into a residual image whose foreground
pixels mark edge or defect structure, and reports the residual's
foreground pixel count, wall-clock time and the number of elementary
erode/dilate kernel passes it executed.  The dilation and erosion
methods binarize and smooth the tile first (close, open, close); SMEE
and boundary extraction operate on the grayscale input directly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from enum import Enum

from .image import Image, Threshold, add, binarize, pixel_count, subtract
from .morphology import StructuringElement, closing, dilate, erode, opening

__all__ = [
    "DetectionMethod",
    "PipelineOptions",
    "ResidualResult",
    "smooth",
    "dilation_pipeline",
    "erosion_pipeline",
    "smee",
    "boundary_extraction",
    "run_method",
]


class DetectionMethod(Enum):
    """The four detection methods, keyed by their CLI/report names."""

    DILATION = "dilation"
    EROSION = "erosion"
    SMEE = "smee"
    BOUNDARY = "boundary"


# erode/dilate kernel passes per method: smoothing is three two-pass
# operators (close, open, close) plus one final dilate or erode.
ELEMENTARY_OPS = {
    DetectionMethod.DILATION: 7,
    DetectionMethod.EROSION: 7,
    DetectionMethod.SMEE: 1,
    DetectionMethod.BOUNDARY: 1,
}

EROSION_VARIANTS = ("literal", "difference")


@dataclass(frozen=True)
class PipelineOptions:
    """Method behavior switches.

    erosion_variant
        ``"literal"`` combines the smoothed image with its erosion by
        saturating addition (set union on binary input), which makes
        the residual equal the smoothed image itself because erosion
        never adds pixels when the SE origin is set.  ``"difference"``
        substitutes smoothed-minus-eroded, an inner boundary ring.
    binarize_all
        Also binarize the input for SMEE and boundary extraction, so
        counts are comparable across all four methods.
    """

    erosion_variant: str = "literal"
    binarize_all: bool = False

    def __post_init__(self) -> None:
        if self.erosion_variant not in EROSION_VARIANTS:
            raise ValueError(
                f"erosion_variant must be one of {EROSION_VARIANTS}, got {self.erosion_variant!r}"
            )


@dataclass(frozen=True)
class ResidualResult:
    """Output of one detection method on one tile."""

    method: DetectionMethod
    residual: Image
    count: int
    elapsed_seconds: float
    elementary_ops: int


def _require_origin(se: StructuringElement) -> None:
    if not se.origin_included:
        raise ValueError("smoothing pipelines require a structuring element whose origin cell is true")


def smooth(imgb: Image, se: StructuringElement) -> Image:
    """Close, open, then close again: the shared prefix of the
    dilation and erosion methods.

    Expects a binary input (output is then binary) and an SE whose
    origin cell is true.
    """
    _require_origin(se)
    return closing(opening(closing(imgb, se), se), se)


def _result(method: DetectionMethod, residual: Image, started: float) -> ResidualResult:
    return ResidualResult(
        method=method,
        residual=residual,
        count=pixel_count(residual),
        elapsed_seconds=time.perf_counter() - started,
        elementary_ops=ELEMENTARY_OPS[method],
    )


def dilation_pipeline(
    img: Image, se: StructuringElement, threshold: Threshold = Threshold()
) -> ResidualResult:
    """Binarize, smooth, then subtract the smoothed image from its dilation.

    The residual is the one-SE-thick external boundary ring of the
    smoothed foreground.
    """
    _require_origin(se)
    started = time.perf_counter()
    smoothed = smooth(binarize(img, threshold), se)
    residual = subtract(dilate(smoothed, se), smoothed)
    return _result(DetectionMethod.DILATION, residual, started)


def erosion_pipeline(
    img: Image,
    se: StructuringElement,
    threshold: Threshold = Threshold(),
    variant: str = "literal",
) -> ResidualResult:
    """Binarize, smooth, then combine the smoothed image with its erosion.

    The literal variant adds them (saturating), so the residual equals
    the smoothed image and the count measures its foreground area; the
    difference variant yields the inner boundary ring instead.
    """
    if variant not in EROSION_VARIANTS:
        raise ValueError(f"variant must be one of {EROSION_VARIANTS}, got {variant!r}")
    _require_origin(se)
    started = time.perf_counter()
    smoothed = smooth(binarize(img, threshold), se)
    eroded = erode(smoothed, se)
    if variant == "literal":
        residual = add(eroded, smoothed)
    else:
        residual = subtract(smoothed, eroded)
    return _result(DetectionMethod.EROSION, residual, started)


def smee(img: Image, se: StructuringElement) -> ResidualResult:
    """Simple morphological edge extraction: dilation minus the input."""
    started = time.perf_counter()
    residual = subtract(dilate(img, se), img)
    return _result(DetectionMethod.SMEE, residual, started)


def boundary_extraction(img: Image, se: StructuringElement) -> ResidualResult:
    """Input minus its erosion: the object contour pixels."""
    started = time.perf_counter()
    residual = subtract(img, erode(img, se))
    return _result(DetectionMethod.BOUNDARY, residual, started)


def run_method(
    method: DetectionMethod,
    img: Image,
    se: StructuringElement,
    threshold: Threshold = Threshold(),
    options: PipelineOptions = PipelineOptions(),
) -> ResidualResult:
    """Dispatch one method on one tile, timing the full pipeline.

    ``elapsed_seconds`` is measured around everything the method does,
    including binarization, with a monotonic clock.  Results are
    deterministic except for that field.
    """
    started = time.perf_counter()
    if method is DetectionMethod.DILATION:
        result = dilation_pipeline(img, se, threshold)
    elif method is DetectionMethod.EROSION:
        result = erosion_pipeline(img, se, threshold, variant=options.erosion_variant)
    else:
        source = binarize(img, threshold) if options.binarize_all else img
        if method is DetectionMethod.SMEE:
            result = smee(source, se)
        else:
            result = boundary_extraction(source, se)
    return replace(result, elapsed_seconds=time.perf_counter() - started)
