"""Deterministic synthetic tile and defect generation.

Produces reference tiles (plain or gridded, optionally noisy) and
defect-injected copies for the four evaluated defect kinds: a crack
(break rendered as a thick polyline), a pinhole (single stuck pixel),
and blob/spot (filled disks of deviant intensity, a water-drop mark
and a color discontinuity respectively).

Generation is a pure function of the specs.  Randomness comes from a
counter-based Philox generator keyed by the spec's seed, so equal
specs yield bit-identical images on every platform.  Coordinates are
(row, col) with the origin at the top-left pixel.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .image import Image

__all__ = [
    "GridPattern",
    "TileSpec",
    "DefectKind",
    "DefectSpec",
    "generate_reference",
    "inject_defect",
    "defect_mask",
]


@dataclass(frozen=True)
class GridPattern:
    """Grid lines every ``spacing`` pixels (rows and columns where
    index % spacing == 0) drawn at ``line_intensity``."""

    spacing: int
    line_intensity: float

    def __post_init__(self) -> None:
        if self.spacing < 1:
            raise ValueError(f"grid spacing must be >= 1, got {self.spacing}")
        if not (0.0 <= self.line_intensity <= 1.0):
            raise ValueError(f"line intensity must lie in [0, 1], got {self.line_intensity}")


@dataclass(frozen=True)
class TileSpec:
    """Recipe for a reference tile image."""

    width: int
    height: int
    base_intensity: float = 0.8
    pattern: GridPattern | None = None
    noise_amplitude: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"tile dimensions must be positive, got {self.height}x{self.width}")
        if not (0.0 <= self.base_intensity <= 1.0):
            raise ValueError(f"base intensity must lie in [0, 1], got {self.base_intensity}")
        if not (0.0 <= self.noise_amplitude <= 1.0):
            raise ValueError(f"noise amplitude must lie in [0, 1], got {self.noise_amplitude}")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")

    @classmethod
    def from_dict(cls, data: dict) -> "TileSpec":
        """Build from the config-file representation (see README)."""
        pattern = data.get("pattern", "plain")
        if pattern == "plain" or pattern is None:
            grid = None
        elif isinstance(pattern, dict) and pattern.get("type") == "grid":
            grid = GridPattern(int(pattern["spacing"]), float(pattern["line_intensity"]))
        else:
            raise ValueError(f"unknown tile pattern {pattern!r}")
        return cls(
            width=int(data["width"]),
            height=int(data["height"]),
            base_intensity=float(data.get("base_intensity", 0.8)),
            pattern=grid,
            noise_amplitude=float(data.get("noise_amplitude", 0.0)),
            seed=int(data.get("seed", 0)),
        )


class DefectKind(Enum):
    CRACK = "crack"
    PINHOLE = "pinhole"
    BLOB = "blob"
    SPOT = "spot"


@dataclass(frozen=True)
class DefectSpec:
    """Recipe for one injected defect.

    Geometry is kind-specific: a crack takes ``vertices`` (a polyline
    of at least two (row, col) points) and a ``thickness``; a pinhole
    takes a single integer ``position``; blob and spot take ``center``
    and ``radius``.  A pixel belongs to a disk when its center lies
    within ``radius`` of the disk center, and to a crack when it lies
    within ``thickness / 2`` of the polyline.

    The seed is reserved for randomized defect texture; the current
    kinds are fully geometric and do not consume it.
    """

    kind: DefectKind
    intensity: float
    vertices: tuple[tuple[float, float], ...] | None = None
    thickness: float = 1.0
    position: tuple[int, int] | None = None
    center: tuple[float, float] | None = None
    radius: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (0.0 <= self.intensity <= 1.0):
            raise ValueError(f"defect intensity must lie in [0, 1], got {self.intensity}")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.kind is DefectKind.CRACK:
            if self.vertices is None or len(self.vertices) < 2:
                raise ValueError("crack requires a polyline of at least two vertices")
            if self.thickness <= 0:
                raise ValueError(f"crack thickness must be > 0, got {self.thickness}")
            object.__setattr__(
                self, "vertices", tuple((float(r), float(c)) for r, c in self.vertices)
            )
        elif self.kind is DefectKind.PINHOLE:
            if self.position is None:
                raise ValueError("pinhole requires a pixel position")
            object.__setattr__(self, "position", (int(self.position[0]), int(self.position[1])))
        elif self.kind in (DefectKind.BLOB, DefectKind.SPOT):
            if self.center is None:
                raise ValueError(f"{self.kind.value} requires a center")
            if self.radius < 0:
                raise ValueError(f"radius must be >= 0, got {self.radius}")
            object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    @classmethod
    def from_dict(cls, data: dict) -> "DefectSpec":
        """Build from the config-file representation (see README)."""
        kind = DefectKind(data["kind"])
        common = dict(
            kind=kind,
            intensity=float(data["intensity"]),
            seed=int(data.get("seed", 0)),
        )
        if kind is DefectKind.CRACK:
            return cls(
                vertices=tuple((float(r), float(c)) for r, c in data["vertices"]),
                thickness=float(data.get("thickness", 1.0)),
                **common,
            )
        if kind is DefectKind.PINHOLE:
            r, c = data["position"]
            return cls(position=(int(r), int(c)), **common)
        r, c = data["center"]
        return cls(center=(float(r), float(c)), radius=float(data["radius"]), **common)


def generate_reference(spec: TileSpec) -> Image:
    """Render a reference tile from its spec.

    Base intensity everywhere, grid lines if requested, then uniform
    noise in [-noise_amplitude, +noise_amplitude] clipped to [0, 1].
    """
    pixels = np.full((spec.height, spec.width), spec.base_intensity, dtype=np.float64)
    if spec.pattern is not None:
        step = spec.pattern.spacing
        pixels[::step, :] = spec.pattern.line_intensity
        pixels[:, ::step] = spec.pattern.line_intensity
    if spec.noise_amplitude > 0.0:
        rng = np.random.Generator(np.random.Philox(spec.seed))
        noise = rng.uniform(-spec.noise_amplitude, spec.noise_amplitude, size=pixels.shape)
        pixels = np.clip(pixels + noise, 0.0, 1.0)
    return Image(pixels)


def defect_mask(shape: tuple[int, int], spec: DefectSpec) -> np.ndarray:
    """Boolean mask of the pixels a defect covers on a tile of ``shape``.

    Raises ValueError when the geometry does not lie within the tile.
    """
    h, w = shape
    if spec.kind is DefectKind.PINHOLE:
        r, c = spec.position
        if not (0 <= r < h and 0 <= c < w):
            raise ValueError(f"pinhole position {spec.position} outside {h}x{w} tile")
        mask = np.zeros((h, w), dtype=bool)
        mask[r, c] = True
        return mask

    if spec.kind in (DefectKind.BLOB, DefectKind.SPOT):
        cr, cc = spec.center
        rad = spec.radius
        if cr - rad < 0 or cr + rad > h - 1 or cc - rad < 0 or cc + rad > w - 1:
            raise ValueError(
                f"{spec.kind.value} disk (center {spec.center}, radius {rad}) outside {h}x{w} tile"
            )
        rr, cc_grid = np.mgrid[0:h, 0:w]
        return (rr - cr) ** 2 + (cc_grid - cc) ** 2 <= rad * rad

    # crack: pixels within thickness/2 of any polyline segment
    for r, c in spec.vertices:
        if not (0 <= r <= h - 1 and 0 <= c <= w - 1):
            raise ValueError(f"crack vertex ({r}, {c}) outside {h}x{w} tile")
    rr, cc_grid = np.mgrid[0:h, 0:w]
    rr = rr.astype(np.float64)
    cc_grid = cc_grid.astype(np.float64)
    half = spec.thickness / 2.0
    mask = np.zeros((h, w), dtype=bool)
    for (r0, c0), (r1, c1) in zip(spec.vertices, spec.vertices[1:]):
        dr, dc = r1 - r0, c1 - c0
        length2 = dr * dr + dc * dc
        if length2 == 0.0:
            t = 0.0
        else:
            t = np.clip(((rr - r0) * dr + (cc_grid - c0) * dc) / length2, 0.0, 1.0)
        dist2 = (rr - (r0 + t * dr)) ** 2 + (cc_grid - (c0 + t * dc)) ** 2
        mask |= dist2 <= half * half
    return mask


def inject_defect(base: Image, spec: DefectSpec) -> Image:
    """Copy of ``base`` with the defect's pixels set to its intensity.

    Pixels outside the defect geometry are untouched; a defect whose
    intensity equals the underlying tile changes nothing (permitted).
    """
    mask = defect_mask(base.shape, spec)
    pixels = base.pixels.copy()
    pixels[mask] = spec.intensity
    return Image(pixels)
