"""Defect classification by residual pixel count, plus PSNR/MSE.

A tile is compared to a defect-free reference through the residual
pixel counts of the same detection method: ``delta_d = reference_count
- test_count``.  A defective tile produces more residual pixels than
the reference, so a negative delta marks it defective.  PSNR and MSE
quantify how far apart two images are on the [0, 1] intensity scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .image import Image
from .pipelines import DetectionMethod, ResidualResult

__all__ = [
    "Verdict",
    "InspectionRecord",
    "classify",
    "mse",
    "psnr",
    "build_record",
]


class Verdict(Enum):
    DEFECT_FREE = "defect_free"
    DEFECTIVE = "defective"


def classify(reference_count: int, test_count: int, tolerance: int = 0) -> tuple[int, Verdict]:
    """Count-difference rule: defective iff delta_d < -tolerance.

    Parameters
    ----------
    reference_count, test_count : int
        Residual foreground pixel counts of the reference and test tile.
    tolerance : int
        Nonnegative slack; count excesses up to this many pixels still
        pass (default 0, the strict rule).

    Returns
    -------
    (int, Verdict)
        The signed delta ``reference_count - test_count`` and the verdict.
    """
    if tolerance < 0:
        raise ValueError(f"tolerance must be >= 0, got {tolerance}")
    delta = int(reference_count) - int(test_count)
    verdict = Verdict.DEFECTIVE if delta < -tolerance else Verdict.DEFECT_FREE
    return delta, verdict


def mse(a: Image, b: Image) -> float:
    """Mean squared per-pixel difference on the [0, 1] scale.

    Raises ValueError if the images differ in size.
    """
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.height}x{a.width} vs {b.height}x{b.width}")
    diff = a.pixels - b.pixels
    return float(np.mean(diff * diff))


def psnr(mse_value: float, max_i: float = 1.0) -> float:
    """Peak signal-to-noise ratio in dB: 10*log10(max_i^2 / mse).

    Returns ``inf`` when the MSE is zero (identical images).  The
    default peak is 1.0, matching images on the [0, 1] scale; pass 255
    for the 8-bit convention.
    """
    if mse_value < 0:
        raise ValueError(f"mse must be >= 0, got {mse_value}")
    if max_i <= 0:
        raise ValueError(f"max_i must be > 0, got {max_i}")
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(max_i * max_i / mse_value)


@dataclass(frozen=True)
class InspectionRecord:
    """One (tile, method) inspection row."""

    method: DetectionMethod
    reference_count: int
    test_count: int
    delta_d: int
    verdict: Verdict
    mse: float
    psnr_db: float
    elapsed_seconds: float
    elementary_ops: int


def build_record(
    method: DetectionMethod,
    ref_result: ResidualResult,
    test_result: ResidualResult,
    metric_pair: tuple[Image, Image],
    tolerance: int = 0,
) -> InspectionRecord:
    """Aggregate one method's reference and test results into a record.

    ``metric_pair`` is the image pair PSNR/MSE are computed over
    (residuals by default in the CLI); the elapsed time reported is the
    test tile's.
    """
    delta, verdict = classify(ref_result.count, test_result.count, tolerance)
    error = mse(*metric_pair)
    return InspectionRecord(
        method=method,
        reference_count=ref_result.count,
        test_count=test_result.count,
        delta_d=delta,
        verdict=verdict,
        mse=error,
        psnr_db=psnr(error),
        elapsed_seconds=test_result.elapsed_seconds,
        elementary_ops=test_result.elementary_ops,
    )
