"""Image file I/O: PGM (P2/P5) and 8-bit PNG.

Intensities are mapped to [0, 1] on load by dividing by the format's
maximum value, and encoded as round(v * 255) on save.  Color PNG input
is converted to grayscale with ITU-R 601 luma weights
(0.299, 0.587, 0.114).  PGM parsing is done here byte by byte so that
truncation errors can name the offending file offset; PNG goes through
Pillow.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import PIL.Image

from .image import Image, _quantize_255

__all__ = ["ImageFormatError", "load_image", "save_image", "IMAGE_EXTENSIONS"]

IMAGE_EXTENSIONS = (".pgm", ".png")

LUMA_WEIGHTS = (0.299, 0.587, 0.114)


class ImageFormatError(ValueError):
    """Raised for files this loader cannot interpret."""


def load_image(path: str | Path) -> Image:
    """Load a PGM or PNG file as a [0, 1] grayscale image.

    Raises FileNotFoundError for a missing file and ImageFormatError
    for malformed headers, truncated payloads or unsupported bit
    depths, each with its own message.
    """
    path = Path(path)
    ext = path.suffix.lower()
    if ext == ".pgm":
        return _load_pgm(path)
    if ext == ".png":
        return _load_png(path)
    raise ImageFormatError(f"unsupported image format {ext!r} for {path}; expected .pgm or .png")


def save_image(img: Image, path: str | Path) -> None:
    """Write an image as binary PGM (P5) or PNG, chosen by extension.

    Intensity v is encoded as round(v * 255).
    """
    path = Path(path)
    ext = path.suffix.lower()
    data = _quantize_255(img.pixels).astype(np.uint8)
    if ext == ".pgm":
        header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
        path.write_bytes(header + data.tobytes())
    elif ext == ".png":
        PIL.Image.fromarray(data, mode="L").save(path, format="PNG")
    else:
        raise ImageFormatError(f"unsupported image format {ext!r} for {path}; expected .pgm or .png")


class _PgmScanner:
    """Whitespace/comment-aware token reader that tracks byte offsets."""

    WHITESPACE = b" \t\r\n\x0b\x0c"

    def __init__(self, data: bytes, path: Path):
        self.data = data
        self.pos = 0
        self.path = path

    def skip_separators(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            byte = data[self.pos : self.pos + 1]
            if byte in (b"#",):
                eol = data.find(b"\n", self.pos)
                self.pos = n if eol < 0 else eol + 1
            elif byte in self.WHITESPACE:
                self.pos += 1
            else:
                return

    def next_token(self, what: str) -> bytes:
        self.skip_separators()
        if self.pos >= len(self.data):
            raise ImageFormatError(
                f"truncated PGM payload in {self.path}: expected {what} at byte offset {self.pos}"
            )
        start = self.pos
        data, n = self.data, len(self.data)
        while self.pos < n and data[self.pos : self.pos + 1] not in self.WHITESPACE + b"#":
            self.pos += 1
        return data[start : self.pos]

    def next_int(self, what: str) -> int:
        token = self.next_token(what)
        try:
            return int(token)
        except ValueError:
            raise ImageFormatError(
                f"malformed PGM header in {self.path}: {what} is not an integer "
                f"(got {token!r} at byte offset {self.pos - len(token)})"
            ) from None


def _load_pgm(path: Path) -> Image:
    data = path.read_bytes()
    scanner = _PgmScanner(data, path)
    magic = scanner.next_token("magic number")
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError(f"malformed PGM header in {path}: bad magic {magic!r}, expected P2 or P5")
    width = scanner.next_int("width")
    height = scanner.next_int("height")
    maxval = scanner.next_int("maxval")
    if width < 1 or height < 1:
        raise ImageFormatError(f"malformed PGM header in {path}: bad dimensions {width}x{height}")
    if maxval < 1 or maxval > 65535:
        raise ImageFormatError(f"malformed PGM header in {path}: maxval {maxval} outside 1..65535")
    if maxval > 255:
        raise ImageFormatError(
            f"unsupported bit depth in {path}: maxval {maxval} needs 2-byte samples; only 8-bit PGM is supported"
        )

    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        start = scanner.pos + 1
        needed = width * height
        if len(data) - start < needed:
            raise ImageFormatError(
                f"truncated PGM payload in {path}: raster needs {needed} bytes from byte offset "
                f"{start} but the file ends at offset {len(data)}"
            )
        raster = np.frombuffer(data, dtype=np.uint8, count=needed, offset=start)
        values = raster.astype(np.float64).reshape(height, width)
    else:
        flat = np.empty(width * height, dtype=np.float64)
        for i in range(width * height):
            value = scanner.next_int(f"pixel {i}")
            if not (0 <= value <= maxval):
                raise ImageFormatError(
                    f"malformed PGM payload in {path}: pixel value {value} exceeds maxval {maxval}"
                )
            flat[i] = value
        values = flat.reshape(height, width)

    return Image(values / float(maxval))


def _load_png(path: Path) -> Image:
    try:
        with PIL.Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode == "P":
                im = im.convert("RGB")
                mode = "RGB"
            if mode in ("RGB", "RGBA"):
                rgb = np.asarray(im, dtype=np.float64)[..., :3]
                r, g, b = LUMA_WEIGHTS
                gray = rgb[..., 0] * r + rgb[..., 1] * g + rgb[..., 2] * b
            elif mode == "L":
                gray = np.asarray(im, dtype=np.float64)
            elif mode == "LA":
                gray = np.asarray(im, dtype=np.float64)[..., 0]
            else:
                raise ImageFormatError(
                    f"unsupported bit depth in {path}: PNG mode {mode!r}; only 8-bit grayscale or color is supported"
                )
    except PIL.UnidentifiedImageError:
        raise ImageFormatError(f"malformed PNG header in {path}: not a valid PNG file") from None
    return Image(np.clip(gray / 255.0, 0.0, 1.0))
