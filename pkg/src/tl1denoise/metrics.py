"""PSNR and SSIM for images on a known dynamic range."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d

from ._validation import check_image, check_same_shape

SSIM_WIN = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03


@dataclass(frozen=True)
class MetricResult:
    psnr_db: float
    ssim: float


def _pair(test, reference, min_size=1):
    t = check_image(test, "test", min_size=min_size)
    r = check_image(reference, "reference", min_size=min_size)
    check_same_shape(t, r, names=("test", "reference"))
    return t, r


def psnr(test, reference, data_range=1.0):
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    t, r = _pair(test, reference)
    mse = float(np.mean((t - r) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(data_range ** 2 / mse)


def gaussian_window(size=SSIM_WIN, sigma=SSIM_SIGMA):
    """Normalised 1-D Gaussian taps; the 2-D window is its outer product."""
    x = np.arange(size) - (size - 1) / 2.0
    g = np.exp(-0.5 * (x / sigma) ** 2)
    return g / g.sum()


def _filter_valid(img, w):
    # separable correlation, then keep only positions where the window fits
    out = correlate1d(correlate1d(img, w, axis=0, mode="constant"), w, axis=1, mode="constant")
    r = len(w) // 2
    return out[r:img.shape[0] - r, r:img.shape[1] - r]


def ssim_map(test, reference, data_range=1.0):
    """Local SSIM on the valid region (no padding) with an 11x11 Gaussian window."""
    t, r = _pair(test, reference, min_size=SSIM_WIN)
    w = gaussian_window()
    c1 = (SSIM_K1 * data_range) ** 2
    c2 = (SSIM_K2 * data_range) ** 2
    mu_t = _filter_valid(t, w)
    mu_r = _filter_valid(r, w)
    var_t = _filter_valid(t * t, w) - mu_t * mu_t
    var_r = _filter_valid(r * r, w) - mu_r * mu_r
    cov = _filter_valid(t * r, w) - mu_t * mu_r
    num = (2 * mu_t * mu_r + c1) * (2 * cov + c2)
    den = (mu_t ** 2 + mu_r ** 2 + c1) * (var_t + var_r + c2)
    return num / den


def ssim(test, reference, data_range=1.0):
    """Mean structural similarity; exactly 1.0 for identical inputs.

    Raises
    ------
    ValueError
        On shape mismatch or images smaller than 11x11.
    """
    return float(np.mean(ssim_map(test, reference, data_range)))


def evaluate(test, reference, data_range=1.0):
    return MetricResult(psnr(test, reference, data_range), ssim(test, reference, data_range))
