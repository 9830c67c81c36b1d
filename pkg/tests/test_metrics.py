import math

import numpy as np
import pytest
from skimage.metrics import structural_similarity

from tl1denoise.metrics import evaluate, gaussian_window, psnr, ssim, ssim_map


def reference_ssim(x, y):
    return structural_similarity(x, y, data_range=1.0, gaussian_weights=True, sigma=1.5,
                                 use_sample_covariance=False)


def test_psnr_identical_is_inf(rng):
    x = rng.random((8, 8))
    assert psnr(x, x) == math.inf


def test_psnr_uniform_offset():
    x = np.full((10, 10), 0.3)
    assert psnr(x + 0.1, x) == pytest.approx(20.0, abs=1e-12)


def test_psnr_gaussian_noise():
    from tl1denoise.imageio import gaussian_noise
    ref = np.full((512, 512), 0.5)
    assert abs(psnr(ref + 0.1 * gaussian_noise(ref.shape, 3), ref) - 20.0) < 0.1


def test_psnr_data_range():
    x = np.zeros((4, 4))
    assert psnr(x + 25.5, x, data_range=255.0) == pytest.approx(20.0)


def test_psnr_shape_mismatch():
    with pytest.raises(ValueError):
        psnr(np.zeros((4, 4)), np.zeros((4, 5)))


def test_gaussian_window():
    w = gaussian_window()
    assert w.shape == (11,) and w.sum() == pytest.approx(1.0)
    assert np.argmax(w) == 5


def test_ssim_identical_is_one(rng):
    x = rng.random((32, 40))
    assert ssim(x, x) == 1.0


def test_ssim_inverted_binary():
    yy, xx = np.mgrid[:32, :32]
    ref = ((yy // 4 + xx // 4) % 2).astype(float)
    assert ssim(1.0 - ref, ref) < 0.5


@pytest.mark.parametrize("seed", range(5))
def test_ssim_matches_skimage(seed):
    r = np.random.default_rng(seed)
    x = r.random((48, 37))
    y = np.clip(x + 0.2 * r.standard_normal(x.shape), 0, 1)
    assert abs(ssim(x, y) - reference_ssim(x, y)) < 1e-6


def test_ssim_symmetric(rng):
    x, y = rng.random((30, 30)), rng.random((30, 30))
    assert abs(ssim(x, y) - ssim(y, x)) <= 1e-12


def test_ssim_range(rng):
    for _ in range(5):
        x, y = rng.random((20, 20)), rng.random((20, 20))
        assert -1.0 <= ssim(x, y) <= 1.0


def test_shift_lowers_both_metrics(rng):
    ref = rng.random((40, 40)) * 0.8
    test = ref + 0.02 * rng.standard_normal(ref.shape)
    assert psnr(test + 0.1, ref) < psnr(test, ref)
    assert ssim(test + 0.1, ref) < ssim(test, ref)


def test_ssim_map_is_valid_region(rng):
    x = rng.random((30, 25))
    assert ssim_map(x, x).shape == (20, 15)


def test_ssim_too_small():
    with pytest.raises(ValueError):
        ssim(np.zeros((10, 20)), np.zeros((10, 20)))


def test_evaluate(rng):
    x = rng.random((16, 16))
    res = evaluate(x, x)
    assert res.psnr_db == math.inf and res.ssim == 1.0
