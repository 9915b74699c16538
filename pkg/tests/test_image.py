import numpy as np
import pytest
from PIL import Image

from ridgeprompt import BinaryMask, GrayImage, load_gray, load_mask, save_mask
from ridgeprompt.errors import InvalidInputError


def _write_png(path, arr, mode="L"):
    Image.fromarray(arr, mode=mode).save(path, format="PNG")


def test_mid_gray_normalizes_to_half(tmp_path):
    path = tmp_path / "gray.png"
    _write_png(path, np.full((16, 16), 128, dtype=np.uint8))
    img = load_gray(path)
    assert np.all(np.abs(img.pixels - 0.5) <= 1 / 255)


def test_mid_gray_invert_is_fixed_point(tmp_path):
    path = tmp_path / "gray.png"
    _write_png(path, np.full((16, 16), 128, dtype=np.uint8))
    img = load_gray(path, invert=True)
    assert np.all(np.abs(img.pixels - 0.5) <= 1 / 255)


def test_eight_bit_endpoints(tmp_path):
    path = tmp_path / "ends.png"
    arr = np.zeros((2, 2), dtype=np.uint8)
    arr[0, 0] = 255
    _write_png(path, arr)
    img = load_gray(path)
    assert img.pixels[0, 0] == 1.0
    assert img.pixels[1, 1] == 0.0


def test_invert_is_exact_complement(tmp_path):
    path = tmp_path / "rand.png"
    arr = np.random.default_rng(0).integers(0, 256, size=(20, 30), dtype=np.uint8)
    _write_png(path, arr.astype(np.uint8))
    plain = load_gray(path, invert=False)
    flipped = load_gray(path, invert=True)
    assert np.array_equal(flipped.pixels, 1.0 - plain.pixels)


def test_sixteen_bit_normalization(tmp_path):
    path = tmp_path / "deep.png"
    arr = np.array([[0, 65535], [32768, 1000]], dtype=np.uint16)
    Image.fromarray(arr).save(path, format="PNG")
    img = load_gray(path)
    assert img.pixels[0, 0] == 0.0
    assert img.pixels[0, 1] == 1.0
    assert img.pixels[1, 0] == pytest.approx(32768 / 65535)


def test_rgb_collapses_to_luminance(tmp_path):
    path = tmp_path / "rgb.png"
    arr = np.zeros((4, 4, 3), dtype=np.uint8)
    arr[..., 0] = 255  # pure red
    _write_png(path, arr, mode="RGB")
    img = load_gray(path)
    assert np.allclose(img.pixels, 0.299)


def test_load_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_gray(tmp_path / "missing.png")
    bad = tmp_path / "junk.png"
    bad.write_bytes(b"this is not a png")
    with pytest.raises(OSError):
        load_gray(bad)


def test_gray_image_validation():
    with pytest.raises(InvalidInputError):
        GrayImage(np.array([[1.5]]))
    with pytest.raises(InvalidInputError):
        GrayImage(np.array([[-0.1]]))
    with pytest.raises(InvalidInputError):
        GrayImage(np.zeros((0, 4)))
    with pytest.raises(InvalidInputError):
        GrayImage(np.zeros(5))


def test_gray_image_is_immutable():
    img = GrayImage(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        img.pixels[0, 0] = 1.0


def test_mask_roundtrip_is_identical(tmp_path):
    bits = np.random.default_rng(7).random((25, 17)) > 0.5
    mask = BinaryMask(bits)
    path = tmp_path / "mask.png"
    save_mask(mask, path)
    again = load_mask(path)
    assert np.array_equal(again.bits, bits)
    # file really holds only {0, 255}
    raw = np.asarray(Image.open(path))
    assert set(np.unique(raw)) <= {0, 255}


def test_mask_metadata_and_area():
    bits = np.zeros((10, 10), dtype=bool)
    bits[:2, :5] = True
    mask = BinaryMask(bits, pred_iou=0.9, stability=0.5)
    assert mask.area_fraction == pytest.approx(0.1)
    with pytest.raises(InvalidInputError):
        BinaryMask(bits, pred_iou=1.2)
    with pytest.raises(InvalidInputError):
        BinaryMask(bits, stability=-0.1)
