"""Input validation helpers shared by the solver, metrics and estimator."""

import numbers

import numpy as np


def check_image(img, name="image", min_size=2):
    """Return ``img`` as a C-contiguous float64 2-D array, validating it.

    Raises
    ------
    ValueError
        If the array is not 2-D, is smaller than ``min_size`` along an
        axis, or contains non-finite values.
    """
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D grayscale array, got ndim={arr.ndim}")
    if arr.dtype.kind not in "biuf":
        raise ValueError(f"{name} must be real-valued, got dtype={arr.dtype}")
    h, w = arr.shape
    if h < min_size or w < min_size:
        raise ValueError(f"{name} must be at least {min_size}x{min_size}, got {h}x{w}")
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_same_shape(*arrays, names=None):
    shapes = {np.shape(a) for a in arrays}
    if len(shapes) != 1:
        label = ", ".join(names) if names else "inputs"
        raise ValueError(f"shape mismatch between {label}: {[np.shape(a) for a in arrays]}")


def check_positive(value, name):
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a finite positive number, got {value!r}")
    return float(value)
