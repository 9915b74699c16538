"""Grayscale image and binary mask types, PNG I/O, coordinate conventions.

Conventions used throughout the package:

* pixel coordinates are ``(x, y)`` with ``x`` the column index and ``y`` the
  row index, origin at the top-left corner;
* array shapes are numpy-style ``(height, width)``;
* intensities are float64 in ``[0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import InvalidInputError, InvalidParameterError

# Rec. 601 luma weights used to collapse RGB input to a single channel.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class PixelPoint:
    """An integer pixel location, x = column, y = row (top-left origin)."""

    x: int
    y: int

    def as_list(self) -> list[int]:
        return [int(self.x), int(self.y)]


@dataclass(frozen=True)
class GrayImage:
    """A normalized grayscale intensity field.

    ``pixels`` is a read-only float64 array of shape ``(height, width)``
    with every value in ``[0, 1]``.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels, dtype=np.float64)
        if arr.ndim != 2:
            raise InvalidInputError(f"image must be 2-D, got shape {arr.shape}")
        if arr.size == 0:
            raise InvalidInputError("zero-area image")
        if not np.isfinite(arr).all():
            raise InvalidInputError("image contains non-finite values")
        lo, hi = float(arr.min()), float(arr.max())
        if lo < 0.0 or hi > 1.0:
            raise InvalidInputError(
                f"intensities must lie in [0, 1], got range [{lo}, {hi}]"
            )
        object.__setattr__(self, "pixels", _freeze(arr))

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    def inverted(self) -> "GrayImage":
        """Elementwise ``1 - intensity``; turns valleys into ridges."""
        return GrayImage(1.0 - self.pixels)


@dataclass(frozen=True)
class BinaryMask:
    """A boolean raster annotating an image of the same dimensions.

    ``pred_iou`` and ``stability`` are optional quality scores attached by a
    segmenter; both live in ``[0, 1]`` when present.
    """

    bits: np.ndarray
    pred_iou: float | None = None
    stability: float | None = None

    def __post_init__(self):
        arr = np.asarray(self.bits)
        if arr.dtype != np.bool_:
            arr = arr.astype(bool)
        if arr.ndim != 2:
            raise InvalidInputError(f"mask must be 2-D, got shape {arr.shape}")
        if arr.size == 0:
            raise InvalidInputError("zero-area mask")
        for name in ("pred_iou", "stability"):
            v = getattr(self, name)
            if v is not None and not (0.0 <= float(v) <= 1.0):
                raise InvalidInputError(f"{name} must be in [0, 1], got {v}")
        object.__setattr__(self, "bits", _freeze(arr))

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.bits.shape

    @property
    def area_fraction(self) -> float:
        return float(np.count_nonzero(self.bits)) / self.bits.size


def _to_gray_array(img: Image.Image) -> np.ndarray:
    """Collapse a PIL image to a float64 array normalized to [0, 1]."""
    mode = img.mode
    if mode == "P":
        img = img.convert("RGB")
        mode = "RGB"
    if mode in ("RGBA", "LA"):
        img = img.convert(mode[:-1])
        mode = img.mode

    if mode == "L":
        return np.asarray(img, dtype=np.float64) / 255.0
    if mode in ("I;16", "I;16B", "I;16L"):
        return np.asarray(img, dtype=np.float64) / 65535.0
    if mode == "I":
        arr = np.asarray(img, dtype=np.float64)
        # Pillow reports 16-bit grayscale PNGs as mode "I" on some paths.
        return arr / 65535.0
    if mode == "RGB":
        arr = np.asarray(img, dtype=np.float64) / 255.0
        r, g, b = LUMA_WEIGHTS
        return r * arr[..., 0] + g * arr[..., 1] + b * arr[..., 2]
    raise InvalidInputError(f"unsupported image mode {mode!r}")


def load_gray(path, invert: bool = False) -> GrayImage:
    """Load a PNG (8/16-bit gray or RGB) as a normalized grayscale image.

    RGB input is collapsed to luminance with weights (0.299, 0.587, 0.114).
    With ``invert=True`` the returned intensities are ``1 - v``, exactly,
    which re-expresses valley-like dark structures as bright ridges.
    """
    try:
        with Image.open(path) as img:
            arr = _to_gray_array(img)
    except FileNotFoundError:
        raise
    except UnidentifiedImageError as exc:
        raise OSError(f"unreadable image file: {path}") from exc
    if arr.size == 0:
        raise InvalidInputError(f"zero-area image: {path}")
    arr = np.clip(arr, 0.0, 1.0)
    if invert:
        arr = 1.0 - arr
    return GrayImage(arr)


def save_gray(image: GrayImage, path) -> None:
    """Write a grayscale image as 8-bit PNG (values rounded to 0..255)."""
    arr = np.rint(image.pixels * 255.0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(path, format="PNG")


def load_mask(path) -> BinaryMask:
    """Read a binary mask PNG; any nonzero pixel is foreground."""
    try:
        with Image.open(path) as img:
            arr = np.asarray(img.convert("L"))
    except UnidentifiedImageError as exc:
        raise OSError(f"unreadable mask file: {path}") from exc
    return BinaryMask(arr > 0)


def save_mask(mask: BinaryMask, path) -> None:
    """Write a binary mask as 8-bit PNG with values {0, 255}."""
    arr = np.where(mask.bits, 255, 0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(path, format="PNG")


def as_field(image) -> np.ndarray:
    """Accept a GrayImage or a bare 2-D array and return the float64 field.

    Raw arrays are allowed so that linear-algebraic callers (tests of
    linearity, intensity-scaled inputs) are not forced through the [0, 1]
    normalization contract of GrayImage.
    """
    if isinstance(image, GrayImage):
        return image.pixels
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidParameterError(f"expected a 2-D field, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidParameterError("zero-area field")
    return arr
