import numpy as np
import pytest

from ridgeprompt import GrayImage, ScaleSpec, compute_jet, gaussian_smooth
from ridgeprompt.errors import InvalidParameterError
from ridgeprompt.scalespace import gaussian_kernel

INTERIOR = (slice(20, 44), slice(20, 44))


def test_scale_spec_validation():
    with pytest.raises(InvalidParameterError):
        ScaleSpec(scales=(4.0, 2.0, 8.0))
    with pytest.raises(InvalidParameterError):
        ScaleSpec(scales=(1.0, 2.0))
    with pytest.raises(InvalidParameterError):
        ScaleSpec(scales=(0.0, 1.0, 2.0))
    with pytest.raises(InvalidParameterError):
        ScaleSpec(scales=(1.0, 2.0, 4.0), gamma=1.5)
    with pytest.raises(InvalidParameterError):
        ScaleSpec(scales=(1.0, 2.0, 4.0), gamma=0.0)


def test_default_ladder_spans_one_to_sixteen():
    spec = ScaleSpec.default()
    assert spec.num_scales == 9
    assert spec.scales[0] == pytest.approx(1.0)
    assert spec.scales[-1] == pytest.approx(16.0)
    assert spec.gamma == 0.75


@pytest.mark.parametrize("t", [1.0, 2.0, 7.5])
def test_constant_image_is_fixed_point(t):
    img = GrayImage(np.full((32, 32), 0.37))
    out = gaussian_smooth(img, t)
    # constant everywhere, boundary included, thanks to reflective padding
    assert np.allclose(out, 0.37, atol=1e-12)


def test_constant_image_derivatives_vanish():
    jet = compute_jet(GrayImage(np.full((32, 32), 0.6)), 2.0)
    for field in (jet.Lx, jet.Ly, jet.Lxx, jet.Lxy, jet.Lyy):
        assert np.abs(field).max() < 1e-12


def test_impulse_center_matches_kernel_evaluation():
    # oracle: direct evaluation of the truncated, normalized, sampled kernel
    t = 4.0
    radius = int(np.ceil(4.0 * np.sqrt(t)))
    offsets = np.arange(-radius, radius + 1)
    raw = np.exp(-(offsets**2) / (2.0 * t)) / np.sqrt(2.0 * np.pi * t)
    k_origin = raw[radius] / raw.sum()

    size = 65
    field = np.zeros((size, size))
    field[size // 2, size // 2] = 1.0
    out = gaussian_smooth(field, t)
    assert out[size // 2, size // 2] == pytest.approx(k_origin**2, rel=1e-12)


def test_semigroup_property(random_field):
    for t1, t2 in [(1.0, 1.0), (1.5, 2.5), (2.0, 6.0)]:
        twice = gaussian_smooth(gaussian_smooth(random_field, t1), t2)
        once = gaussian_smooth(random_field, t1 + t2)
        assert np.abs(twice - once).max() < 1e-3


@pytest.mark.parametrize("t", [1.0, 4.0, 16.0])
def test_linear_ramp_jet(t):
    w = 64
    ramp = np.tile(np.arange(w, dtype=float) / w, (w, 1))
    jet = compute_jet(ramp, t)
    assert np.abs(jet.Lx[INTERIOR] - 1.0 / w).max() < 1e-6
    assert np.abs(jet.Ly[INTERIOR]).max() < 1e-6
    for field in (jet.Lxx, jet.Lxy, jet.Lyy):
        assert np.abs(field[INTERIOR]).max() < 1e-6


@pytest.mark.parametrize("t", [1.0, 4.0, 16.0])
def test_quadratic_second_derivative(t):
    w = 64
    c = 1.0 / 1024.0
    x = np.arange(w, dtype=float)
    quad = np.tile(c * (x - 32.0) ** 2, (w, 1))
    jet = compute_jet(quad, t)
    assert np.abs(jet.Lxx[INTERIOR] - 2.0 * c).max() < 1e-6


def test_first_derivative_matches_finite_differences(random_field):
    # t = 4 keeps the O(h^2 * L''') truncation error of the central
    # difference itself under the 5e-3 budget on white-noise input
    jet = compute_jet(random_field, 4.0)
    fd = np.zeros_like(jet.L)
    fd[:, 1:-1] = 0.5 * (jet.L[:, 2:] - jet.L[:, :-2])
    assert np.abs(jet.Lx[:, 1:-1] - fd[:, 1:-1])[INTERIOR].max() < 5e-3


def test_jet_linearity(random_field):
    g = np.random.default_rng(99).random(random_field.shape)
    a, b = 1.7, -0.6
    combo = compute_jet(a * random_field + b * g, 2.0)
    jf = compute_jet(random_field, 2.0)
    jg = compute_jet(g, 2.0)
    for name in ("L", "Lx", "Ly", "Lxx", "Lxy", "Lyy"):
        lhs = getattr(combo, name)
        rhs = a * getattr(jf, name) + b * getattr(jg, name)
        assert np.abs(lhs - rhs).max() < 1e-9


def test_rotation_equivariance(random_field):
    t = 2.0
    jet = compute_jet(random_field, t)
    jrot = compute_jet(np.rot90(random_field), t)
    # smoothed field rotates with the image
    assert np.abs(jrot.L - np.rot90(jet.L)).max() < 1e-12
    # first derivatives exchange roles: x' runs along old +y, y' along old -x
    assert np.abs(jrot.Lx - np.rot90(jet.Ly)).max() < 1e-12
    assert np.abs(jrot.Ly + np.rot90(jet.Lx)).max() < 1e-12


def test_invalid_scale_rejected(random_field):
    with pytest.raises(InvalidParameterError):
        gaussian_smooth(random_field, 0.0)
    with pytest.raises(InvalidParameterError):
        compute_jet(random_field, -1.0)


def test_tiny_image_rejected():
    with pytest.raises(InvalidParameterError):
        gaussian_smooth(np.zeros((2, 5)), 1.0)


def test_kernel_moment_calibration():
    for t in (1.0, 3.0, 16.0):
        radius = int(np.ceil(4.0 * np.sqrt(t)))
        x = np.arange(-radius, radius + 1, dtype=float)
        k0 = gaussian_kernel(t, 0)
        k1 = gaussian_kernel(t, 1)
        k2 = gaussian_kernel(t, 2)
        assert k0.sum() == pytest.approx(1.0, abs=1e-15)
        assert abs(k1.sum()) < 1e-15
        assert np.sum(x * k1) == pytest.approx(-1.0, abs=1e-12)
        assert abs(k2.sum()) < 1e-15
        assert np.sum(x * x * k2) == pytest.approx(2.0, abs=1e-12)
