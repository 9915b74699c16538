import numpy as np
import pytest

from ridgeprompt import SynthSpec, synth_image, vertical_ridge


@pytest.fixture
def ridge_image():
    """Noiseless vertical Gaussian ridge, sigma 2 (t0 = 4), centered at x=48."""
    spec = SynthSpec(dims=(96, 96), ridges=(vertical_ridge((96, 96), 48.0, 2.0),))
    image, truth = synth_image(spec)
    return image, truth


@pytest.fixture
def random_field():
    return np.random.default_rng(1234).random((64, 64))
