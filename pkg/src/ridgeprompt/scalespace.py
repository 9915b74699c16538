"""Gaussian scale-space smoothing and derivative jets.

The scale-space representation of an image f is its convolution with a
Gaussian kernel of variance t,

    L(x, y; t) = g(x, y; t) * f(x, y),

computed here with separable 1-D passes. Derivatives of L are obtained by
convolving with sampled derivative-of-Gaussian kernels rather than by
differencing the smoothed field.

Kernel discretization: the Gaussian and its analytic derivatives are sampled
at integer offsets, truncated at radius ceil(4*sqrt(t)), and then calibrated
so each kernel reproduces the exact continuous response on low-order
polynomials:

* order 0: weights sum to 1;
* order 1: weights sum to 0 and the first moment equals -1, so a unit-slope
  ramp yields a derivative of exactly 1;
* order 2: weights sum to 0 and the second moment equals 2, so a quadratic
  c*x**2 yields exactly 2c at every scale.

Boundaries are handled with reflective (symmetric) padding, which keeps
constant images exactly constant and avoids spurious responses at the frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import convolve1d

from .errors import InvalidParameterError
from .image import as_field

DEFAULT_GAMMA = 0.75

# scipy.ndimage boundary mode for symmetric padding: (d c b a | a b c d).
_BOUNDARY = "reflect"


@dataclass(frozen=True)
class ScaleSpec:
    """An ascending ladder of scales (variances, pixel^2) plus the
    normalization exponent gamma used by the ridge-strength measure."""

    scales: tuple[float, ...]
    gamma: float = DEFAULT_GAMMA

    def __post_init__(self):
        scales = tuple(float(t) for t in self.scales)
        if len(scales) < 3:
            raise InvalidParameterError(
                f"need at least 3 scales for interior scale maxima, got {len(scales)}"
            )
        if any(t <= 0 for t in scales):
            raise InvalidParameterError(f"scales must be positive, got {scales}")
        if any(b <= a for a, b in zip(scales, scales[1:])):
            raise InvalidParameterError(f"scales must be strictly increasing, got {scales}")
        if not (0.0 < self.gamma <= 1.0):
            raise InvalidParameterError(f"gamma must be in (0, 1], got {self.gamma}")
        object.__setattr__(self, "scales", scales)

    @property
    def num_scales(self) -> int:
        return len(self.scales)

    @classmethod
    def geometric(
        cls,
        t_min: float = 1.0,
        ratio: float = np.sqrt(2.0),
        count: int = 9,
        gamma: float = DEFAULT_GAMMA,
    ) -> "ScaleSpec":
        """Geometric ladder t_k = t_min * ratio**k with ``count`` scales."""
        if ratio <= 1.0:
            raise InvalidParameterError(f"ratio must exceed 1, got {ratio}")
        return cls(scales=tuple(t_min * ratio**k for k in range(count)), gamma=gamma)

    @classmethod
    def default(cls, gamma: float = DEFAULT_GAMMA) -> "ScaleSpec":
        """Nine scales in [1, 16], ratio sqrt(2): sub-pixel through ~4 px sigma."""
        return cls.geometric(gamma=gamma)


@dataclass(frozen=True)
class ScaleJet:
    """The smoothed image and its derivatives up to second order at one scale."""

    t: float
    L: np.ndarray
    Lx: np.ndarray
    Ly: np.ndarray
    Lxx: np.ndarray
    Lxy: np.ndarray
    Lyy: np.ndarray


def gaussian_kernel(t: float, order: int = 0) -> np.ndarray:
    """Sampled, truncated, moment-calibrated derivative-of-Gaussian kernel.

    Returns the 1-D kernel for variance ``t`` and derivative ``order`` in
    {0, 1, 2}, oriented for true convolution (so the order-1 kernel yields a
    positive response on an increasing ramp).
    """
    if t <= 0:
        raise InvalidParameterError(f"scale t must be positive, got {t}")
    if order not in (0, 1, 2):
        raise InvalidParameterError(f"derivative order must be 0, 1 or 2, got {order}")
    radius = int(np.ceil(4.0 * np.sqrt(t)))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    g = np.exp(-(x * x) / (2.0 * t)) / np.sqrt(2.0 * np.pi * t)
    if order == 0:
        return g / g.sum()
    if order == 1:
        g1 = -(x / t) * g
        g1 -= g1.mean()
        return g1 / -np.sum(x * g1)
    g2 = ((x * x - t) / (t * t)) * g
    g2 -= g2.mean()
    return g2 * (2.0 / np.sum(x * x * g2))


def _separable(field: np.ndarray, t: float, order_x: int, order_y: int) -> np.ndarray:
    out = convolve1d(field, gaussian_kernel(t, order_y), axis=0, mode=_BOUNDARY)
    return convolve1d(out, gaussian_kernel(t, order_x), axis=1, mode=_BOUNDARY)


def _check_min_size(field: np.ndarray) -> None:
    if field.shape[0] < 3 or field.shape[1] < 3:
        raise InvalidParameterError(
            f"image must be at least 3x3 for scale-space jets, got {field.shape}"
        )


def gaussian_smooth(image, t: float) -> np.ndarray:
    """Smooth an image with a 2-D Gaussian of variance ``t`` (separably)."""
    field = as_field(image)
    _check_min_size(field)
    return _separable(field, float(t), 0, 0)


def compute_jet(image, t: float) -> ScaleJet:
    """Compute L and its five derivative fields at scale ``t``.

    Shares the column-direction passes between fields: three axis-0
    convolutions feed the six output fields, so a full jet costs nine 1-D
    passes instead of twelve.
    """
    field = as_field(image)
    _check_min_size(field)
    t = float(t)
    k0 = gaussian_kernel(t, 0)
    k1 = gaussian_kernel(t, 1)
    k2 = gaussian_kernel(t, 2)
    # axis 0 is y (rows), axis 1 is x (columns)
    a0 = convolve1d(field, k0, axis=0, mode=_BOUNDARY)
    a1 = convolve1d(field, k1, axis=0, mode=_BOUNDARY)
    a2 = convolve1d(field, k2, axis=0, mode=_BOUNDARY)
    return ScaleJet(
        t=t,
        L=convolve1d(a0, k0, axis=1, mode=_BOUNDARY),
        Lx=convolve1d(a0, k1, axis=1, mode=_BOUNDARY),
        Ly=convolve1d(a1, k0, axis=1, mode=_BOUNDARY),
        Lxx=convolve1d(a0, k2, axis=1, mode=_BOUNDARY),
        Lxy=convolve1d(a1, k1, axis=1, mode=_BOUNDARY),
        Lyy=convolve1d(a2, k0, axis=1, mode=_BOUNDARY),
    )
