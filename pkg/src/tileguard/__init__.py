"""Morphological surface-defect inspection for ceramic tile images.

Detects tile surface defects with four residual-based morphological
methods (dilation and erosion smoothing pipelines, simple
morphological edge extraction, boundary extraction), classifies tiles
by residual pixel count against a defect-free reference, and reports
PSNR/MSE and per-method timings.
"""

from .image import (
    Image,
    Threshold,
    add,
    binarize,
    complement,
    otsu_threshold,
    pixel_count,
    subtract,
)
from .io import ImageFormatError, load_image, save_image
from .metrics import InspectionRecord, Verdict, build_record, classify, mse, psnr
from .morphology import StructuringElement, closing, dilate, erode, opening
from .pipelines import (
    DetectionMethod,
    PipelineOptions,
    ResidualResult,
    boundary_extraction,
    dilation_pipeline,
    erosion_pipeline,
    run_method,
    smee,
    smooth,
)
from .synth import (
    DefectKind,
    DefectSpec,
    GridPattern,
    TileSpec,
    defect_mask,
    generate_reference,
    inject_defect,
)

__version__ = "0.1.0"

__all__ = [
    "Image",
    "Threshold",
    "StructuringElement",
    "add",
    "subtract",
    "complement",
    "binarize",
    "otsu_threshold",
    "pixel_count",
    "dilate",
    "erode",
    "opening",
    "closing",
    "DetectionMethod",
    "PipelineOptions",
    "ResidualResult",
    "smooth",
    "dilation_pipeline",
    "erosion_pipeline",
    "smee",
    "boundary_extraction",
    "run_method",
    "Verdict",
    "InspectionRecord",
    "classify",
    "mse",
    "psnr",
    "build_record",
    "GridPattern",
    "TileSpec",
    "DefectKind",
    "DefectSpec",
    "generate_reference",
    "inject_defect",
    "defect_mask",
    "ImageFormatError",
    "load_image",
    "save_image",
    "__version__",
]
