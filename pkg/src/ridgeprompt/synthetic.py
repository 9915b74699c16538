"""Synthetic curvilinear test images with exact ground truth.

Images are sums of Gaussian-profile ridges laid along continuous paths:
intensity = clip(sum_i amplitude_i * exp(-d_i(p)**2 / (2*sigma_i**2)) + noise)
where d_i is the Euclidean distance from the pixel center to the i-th path.
The Gaussian cross-section admits closed-form scale-space responses, which is
what makes these fixtures usable as detection oracles: a ridge of half-width
sigma has true scale t0 = sigma**2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import InvalidParameterError
from .image import BinaryMask, GrayImage


@dataclass(frozen=True)
class StraightPath:
    """A line segment from (x0, y0) to (x1, y1) in continuous coordinates."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if self.x0 == self.x1 and self.y0 == self.y1:
            raise InvalidParameterError("straight path endpoints coincide")

    def distance(self, xx: np.ndarray, yy: np.ndarray) -> np.ndarray:
        dx, dy = self.x1 - self.x0, self.y1 - self.y0
        len_sq = dx * dx + dy * dy
        t = ((xx - self.x0) * dx + (yy - self.y0) * dy) / len_sq
        t = np.clip(t, 0.0, 1.0)
        return np.hypot(xx - (self.x0 + t * dx), yy - (self.y0 + t * dy))

    def samples(self, step: float = 0.1) -> np.ndarray:
        length = float(np.hypot(self.x1 - self.x0, self.y1 - self.y0))
        n = max(2, int(np.ceil(length / step)) + 1)
        t = np.linspace(0.0, 1.0, n)
        return np.column_stack(
            [self.x0 + t * (self.x1 - self.x0), self.y0 + t * (self.y1 - self.y0)]
        )


@dataclass(frozen=True)
class SinusoidPath:
    """A column centerline oscillating with y:
    x(y) = x_center + amplitude * sin(2*pi*y / period), spanning all rows."""

    x_center: float
    amplitude: float
    period: float
    height: int

    def __post_init__(self):
        if self.period <= 0:
            raise InvalidParameterError(f"period must be positive, got {self.period}")
        if self.height < 2:
            raise InvalidParameterError("sinusoid needs at least two rows")

    def samples(self, step: float = 0.1) -> np.ndarray:
        y = np.arange(0.0, float(self.height - 1) + step, step)
        x = self.x_center + self.amplitude * np.sin(2.0 * np.pi * y / self.period)
        return np.column_stack([x, y])

    def distance(self, xx: np.ndarray, yy: np.ndarray) -> np.ndarray:
        tree = cKDTree(self.samples())
        pts = np.column_stack([xx.ravel(), yy.ravel()])
        d, _ = tree.query(pts)
        return d.reshape(xx.shape)


@dataclass(frozen=True)
class RidgeSpec:
    """One ridge: a path plus the Gaussian profile's half-width and peak."""

    path: StraightPath | SinusoidPath
    sigma: float
    amplitude: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise InvalidParameterError(f"sigma must be positive, got {self.sigma}")
        if not (0.0 < self.amplitude <= 1.0):
            raise InvalidParameterError(f"amplitude must be in (0, 1], got {self.amplitude}")

    @property
    def t0(self) -> float:
        """The ridge's true scale (variance of its cross-section)."""
        return self.sigma * self.sigma


@dataclass(frozen=True)
class SynthSpec:
    """Image dimensions (height, width), ridges, additive noise level, seed."""

    dims: tuple[int, int]
    ridges: tuple[RidgeSpec, ...]
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        h, w = self.dims
        if h < 1 or w < 1:
            raise InvalidParameterError(f"dims must be positive, got {self.dims}")
        if self.noise_sigma < 0:
            raise InvalidParameterError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        object.__setattr__(self, "ridges", tuple(self.ridges))


@dataclass(frozen=True)
class GroundTruth:
    """Exact centerline pixels and sigma per ridge, plus a reference mask of
    all pixels within two sigma of a centerline."""

    centerlines: tuple[tuple[tuple[int, int], ...], ...]
    sigmas: tuple[float, ...]
    mask: BinaryMask

    def to_json(self) -> dict:
        return {
            "centerlines": [[list(p) for p in line] for line in self.centerlines],
            "sigmas": list(self.sigmas),
        }


def vertical_ridge(dims: tuple[int, int], column: float, sigma: float, amplitude: float = 1.0) -> RidgeSpec:
    """A straight vertical ridge running the full image height."""
    h, _ = dims
    return RidgeSpec(
        path=StraightPath(column, 0.0, column, float(h - 1)), sigma=sigma, amplitude=amplitude
    )


def crossing_pair(
    dims: tuple[int, int], sigma: float, amplitude: float = 1.0
) -> tuple[RidgeSpec, RidgeSpec]:
    """Two full-frame diagonal ridges crossing at the image center."""
    h, w = dims
    d1 = StraightPath(0.0, 0.0, float(w - 1), float(h - 1))
    d2 = StraightPath(0.0, float(h - 1), float(w - 1), 0.0)
    return (
        RidgeSpec(path=d1, sigma=sigma, amplitude=amplitude),
        RidgeSpec(path=d2, sigma=sigma, amplitude=amplitude),
    )


def _centerline_pixels(path, dims: tuple[int, int]) -> tuple[tuple[int, int], ...]:
    h, w = dims
    seen = set()
    ordered = []
    for x, y in path.samples(step=0.1):
        px, py = int(round(x)), int(round(y))
        if 0 <= px < w and 0 <= py < h and (px, py) not in seen:
            seen.add((px, py))
            ordered.append((px, py))
    return tuple(ordered)


def synth_image(spec: SynthSpec) -> tuple[GrayImage, GroundTruth]:
    """Render a ridge image and its exact ground truth, deterministically.

    Noise (if any) is drawn from a seeded generator and added before the
    final clip to [0, 1].
    """
    h, w = spec.dims
    yy, xx = np.mgrid[0:h, 0:w].astype(np.float64)
    total = np.zeros((h, w), dtype=np.float64)
    centerlines = []
    truth_bits = np.zeros((h, w), dtype=bool)
    for ridge in spec.ridges:
        pixels = _centerline_pixels(ridge.path, spec.dims)
        if not pixels:
            raise InvalidParameterError(f"ridge path {ridge.path} lies outside dims {spec.dims}")
        centerlines.append(pixels)
        d = ridge.path.distance(xx, yy)
        total += ridge.amplitude * np.exp(-(d * d) / (2.0 * ridge.sigma**2))
        truth_bits |= d <= 2.0 * ridge.sigma

    if spec.noise_sigma > 0:
        noise = np.random.default_rng(spec.seed).normal(0.0, spec.noise_sigma, size=(h, w))
        total = total + noise

    image = GrayImage(np.clip(total, 0.0, 1.0))
    truth = GroundTruth(
        centerlines=tuple(centerlines),
        sigmas=tuple(r.sigma for r in spec.ridges),
        mask=BinaryMask(truth_bits),
    )
    return image, truth
